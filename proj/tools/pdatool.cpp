// pdatool: construct, verify and simulate placement delivery arrays, and
// evaluate coded caching scheme parameters.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "pda/constructors.hpp"
#include "pda/document.hpp"
#include "pda/isomorphism.hpp"
#include "pda/schemes.hpp"
#include "pda/simulator.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << content;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

int64_t to_int(const std::string& tok) {
  size_t pos = 0;
  long long v;
  try {
    v = std::stoll(tok, &pos);
  } catch (const std::exception&) {
    throw UsageError("bad integer '" + tok + "'");
  }
  if (pos != tok.size()) throw UsageError("bad integer '" + tok + "'");
  return v;
}

std::vector<int64_t> int_args(const std::string& csv, size_t expected,
                              const std::string& what) {
  const auto toks = split(csv, ',');
  if (toks.size() != expected)
    throw UsageError(what + " needs " + std::to_string(expected) +
                     " comma-separated arguments");
  std::vector<int64_t> out;
  for (const auto& t : toks) out.push_back(to_int(t));
  return out;
}

// ---------------------------------------------------------------------------
// construct

pda::BasePda load_base(const std::string& path, std::optional<int> lambda_flag) {
  const pda::PdaDocument doc = pda::parse_document(read_file(path));
  if (lambda_flag) return pda::verify_base_pda(doc.array, *lambda_flag);
  if (doc.is_base())
    return pda::verify_base_pda_with(doc.array, *doc.lambda, doc.star_row);
  return pda::verify_base_pda(doc.array, 1);
}

int run_construct(const std::string& scheme, std::optional<int> m, std::optional<int> t,
                  std::optional<int> q, std::optional<int> z,
                  const std::string& base_path, std::optional<int> lambda,
                  int64_t cell_budget, const std::string& out_path) {
  pda::ConstructOptions opts;
  opts.cell_budget = cell_budget;
  const auto need = [](std::optional<int> v, const char* name) {
    if (!v) throw UsageError(std::string("missing --") + name);
    return *v;
  };
  const auto need_base = [&] {
    if (base_path.empty()) throw UsageError("missing --base FILE");
    return load_base(base_path, lambda);
  };

  pda::PdaDocument doc;
  std::ostringstream prov;
  if (scheme == "mn") {
    prov << "mn q=" << need(q, "q") << " z=" << need(z, "z");
    doc = pda::document_for(pda::mn_pda(*q, *z, opts), prov.str());
  } else if (scheme == "g2") {
    prov << "g2 q=" << need(q, "q");
    doc = pda::document_for(pda::g2_base_pda(*q, opts), prov.str());
  } else if (scheme == "transform") {
    if (base_path.empty()) throw UsageError("missing --base FILE");
    const pda::PdaDocument in = pda::parse_document(read_file(base_path));
    prov << "transform base=" << base_path;
    doc = pda::document_for(pda::transform_to_base(in.array, opts), prov.str());
  } else if (scheme == "pm") {
    prov << "pm base=" << base_path << " m=" << need(m, "m");
    doc = pda::document_for(pda::construct_pm(need_base(), *m, opts), prov.str());
  } else if (scheme == "pmt") {
    prov << "pmt base=" << base_path << " m=" << need(m, "m") << " t=" << need(t, "t");
    doc = pda::document_for(pda::construct_pmt(need_base(), *m, *t, opts), prov.str());
  } else if (scheme == "a") {
    prov << "scheme-a m=" << need(m, "m") << " t=" << need(t, "t") << " q=" << need(q, "q")
         << " z=" << need(z, "z");
    doc = pda::document_for(pda::scheme_build(pda::SchemeASpec{*m, *t, *q, *z}, opts),
                            prov.str());
  } else if (scheme == "b") {
    prov << "scheme-b m=" << need(m, "m") << " t=" << need(t, "t") << " q=" << need(q, "q")
         << " z=" << need(z, "z");
    doc = pda::document_for(pda::scheme_build(pda::SchemeBSpec{*m, *t, *q, *z}, opts),
                            prov.str());
  } else if (scheme == "c") {
    prov << "scheme-c m=" << need(m, "m") << " t=" << need(t, "t") << " q=" << need(q, "q");
    doc = pda::document_for(pda::scheme_build(pda::SchemeCSpec{*m, *t, *q}, opts),
                            prov.str());
  } else {
    throw UsageError("unknown scheme '" + scheme + "'");
  }
  write_output(out_path, pda::serialize(doc));
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify

int run_verify(const std::string& path, bool base, std::optional<int> lambda_flag) {
  const pda::PdaDocument doc = pda::parse_document(read_file(path));
  try {
    const pda::PdaParams p = pda::verify_pda(doc.array);
    std::cout << "ok: K=" << p.users << " F=" << p.packets << " Z=" << p.cached
              << " S=" << p.symbols;
    if (p.gain)
      std::cout << " g=" << *p.gain;
    else
      std::cout << " g=- (not regular)";
    std::cout << "\n";
    if (base) {
      const int lambda = lambda_flag ? *lambda_flag : doc.lambda.value_or(1);
      const pda::BasePda b = pda::verify_base_pda(doc.array, lambda);
      std::cout << "base ok: lambda=" << b.lambda << " block_size=" << b.block_size()
                << " phi=";
      for (size_t i = 0; i < b.star_row.size(); ++i)
        std::cout << (i ? "," : "") << b.star_row[i];
      std::cout << "\n";
    }
  } catch (const pda::PdaError& e) {
    std::cout << e.what() << "\n";
    return kExitVerification;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// params

pda::BaselineSpec spec_from(const std::string& scheme, const std::string& csv) {
  using namespace pda;
  if (scheme == "a") {
    const auto v = int_args(csv, 4, "scheme a");
    return SchemeASpec{static_cast<int>(v[0]), static_cast<int>(v[1]),
                       static_cast<int>(v[2]), static_cast<int>(v[3])};
  }
  if (scheme == "b") {
    const auto v = int_args(csv, 4, "scheme b");
    return SchemeBSpec{static_cast<int>(v[0]), static_cast<int>(v[1]),
                       static_cast<int>(v[2]), static_cast<int>(v[3])};
  }
  if (scheme == "c") {
    const auto v = int_args(csv, 3, "scheme c");
    return SchemeCSpec{static_cast<int>(v[0]), static_cast<int>(v[1]),
                       static_cast<int>(v[2])};
  }
  if (scheme == "mn") {
    const auto v = int_args(csv, 2, "mn");
    return MnSpec{v[0], v[1]};
  }
  if (scheme == "grouping") {
    const auto v = int_args(csv, 3, "grouping");
    return GroupingSpec{v[0], v[1], v[2]};
  }
  if (scheme == "wclc") {
    const auto v = int_args(csv, 4, "wclc");
    return WclcSpec{static_cast<int>(v[0]), static_cast<int>(v[1]), v[2], v[3]};
  }
  if (scheme == "wcwc") {
    const auto v = int_args(csv, 3, "wcwc");
    return WcwcSpec{static_cast<int>(v[0]), v[1], v[2]};
  }
  if (scheme == "ytcc") {
    const auto v = int_args(csv, 4, "ytcc");
    return YtccSpec{static_cast<int>(v[0]), static_cast<int>(v[1]),
                    static_cast<int>(v[2]), static_cast<int>(v[3])};
  }
  if (scheme == "cksm1") {
    const auto v = int_args(csv, 4, "cksm1");
    return CksmProductSpec{v[0], static_cast<int>(v[1]), static_cast<int>(v[2]),
                           static_cast<int>(v[3])};
  }
  if (scheme == "cksm2") {
    const auto v = int_args(csv, 4, "cksm2");
    return CksmSubspaceSpec{v[0], static_cast<int>(v[1]), static_cast<int>(v[2]),
                            static_cast<int>(v[3])};
  }
  throw UsageError("unknown scheme '" + scheme + "'");
}

int run_params(const std::string& scheme, const std::string& csv,
               const std::string& format) {
  const pda::SchemeParams p = pda::baseline_params(spec_from(scheme, csv));
  const std::string gain_exact = p.gain ? pda::rational_string(*p.gain) : "-";
  const std::string gain_dec = p.gain ? pda::decimal_string(*p.gain) : "-";
  if (format == "table") {
    std::cout << "scheme            " << scheme << "\n"
              << "args              " << csv << "\n"
              << "users             " << p.users.str() << "\n"
              << "memory_ratio      " << pda::rational_string(p.memory_ratio) << " = "
              << pda::decimal_string(p.memory_ratio) << "\n"
              << "subpacketization  " << p.subpacketization.str() << "\n"
              << "load              " << pda::rational_string(p.load) << " = "
              << pda::decimal_string(p.load) << "\n"
              << "gain              " << gain_exact << " = " << gain_dec << "\n";
  } else if (format == "csv") {
    std::cout << "scheme,args,K,MN_exact,MN,F,R_exact,R,g_exact,g\n";
    std::cout << scheme << ",\"" << csv << "\"," << p.users.str() << ","
              << pda::rational_string(p.memory_ratio) << ","
              << pda::decimal_string(p.memory_ratio) << "," << p.subpacketization.str()
              << "," << pda::rational_string(p.load) << "," << pda::decimal_string(p.load)
              << "," << gain_exact << "," << gain_dec << "\n";
  } else if (format == "json") {
    json j;
    j["scheme"] = scheme;
    j["args"] = csv;
    j["users"] = p.users.str();
    j["memory_ratio"] = {{"exact", pda::rational_string(p.memory_ratio)},
                         {"decimal", pda::decimal_string(p.memory_ratio)}};
    j["subpacketization"] = p.subpacketization.str();
    j["load"] = {{"exact", pda::rational_string(p.load)},
                 {"decimal", pda::decimal_string(p.load)}};
    j["gain"] = {{"exact", gain_exact}, {"decimal", gain_dec}};
    std::cout << j.dump(2) << "\n";
  } else {
    throw UsageError("unknown format '" + format + "'");
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// compare

void emit_row(std::ostream& out, const std::string& scheme, const std::string& args,
              const pda::SchemeParams& p) {
  out << scheme << ",\"" << args << "\"," << p.users.str() << ","
      << pda::rational_string(p.memory_ratio) << ","
      << pda::decimal_string(p.memory_ratio) << "," << p.subpacketization.str() << ","
      << pda::rational_string(p.load) << "," << pda::decimal_string(p.load) << "\n";
}

std::string args_string(const std::vector<int64_t>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

/// Expands a series line: every '?' argument sweeps its full valid range.
std::vector<std::vector<int64_t>> expand_series(const std::string& scheme,
                                                const std::vector<std::string>& toks) {
  const auto fixed = [&](size_t i) -> int64_t {
    if (toks[i] == "?") throw UsageError("argument " + std::to_string(i + 1) +
                                         " of " + scheme + " cannot sweep");
    return to_int(toks[i]);
  };
  std::vector<std::vector<int64_t>> out;
  if (scheme == "mn") {
    if (toks.size() != 2) throw UsageError("mn needs 2 arguments");
    const int64_t users = fixed(0);
    if (toks[1] == "?") {
      for (int64_t t = 1; t <= users; ++t) out.push_back({users, t});
    } else {
      out.push_back({users, to_int(toks[1])});
    }
    return out;
  }
  if (scheme == "grouping") {
    if (toks.size() != 3) throw UsageError("grouping needs 3 arguments");
    const int64_t users = fixed(0), q = fixed(1);
    if (toks[2] == "?") {
      for (int64_t z = 1; z <= q; ++z) out.push_back({users, q, z});
    } else {
      out.push_back({users, q, to_int(toks[2])});
    }
    return out;
  }
  if (scheme == "wclc" || scheme == "a" || scheme == "b") {
    if (toks.size() != 4) throw UsageError(scheme + " needs 4 arguments");
    const int64_t m = fixed(0), t = fixed(1), q = fixed(2);
    if (toks[3] == "?") {
      for (int64_t z = 1; z < q; ++z) out.push_back({m, t, q, z});
    } else {
      out.push_back({m, t, q, to_int(toks[3])});
    }
    return out;
  }
  if (scheme == "wcwc") {
    if (toks.size() != 3) throw UsageError("wcwc needs 3 arguments");
    const int64_t m = fixed(0), q = fixed(1);
    if (toks[2] == "?") {
      for (int64_t z = 1; z < q; ++z) out.push_back({m, q, z});
    } else {
      out.push_back({m, q, to_int(toks[2])});
    }
    return out;
  }
  if (scheme == "c") {
    if (toks.size() != 3) throw UsageError("c needs 3 arguments");
    const int64_t m = fixed(0);
    const int64_t q = fixed(2);
    if (toks[1] == "?") {
      for (int64_t t = 1; t <= m; ++t) out.push_back({m, t, q});
    } else {
      out.push_back({m, to_int(toks[1]), q});
    }
    return out;
  }
  if (scheme == "cksm1" || scheme == "cksm2") {
    if (toks.size() != 4) throw UsageError(scheme + " needs 4 arguments");
    const int64_t p = fixed(0), k = fixed(1), t = fixed(2);
    if (toks[3] == "?") {
      for (int64_t m = 1; m + t <= k; ++m) out.push_back({p, k, t, m});
    } else {
      out.push_back({p, k, t, to_int(toks[3])});
    }
    return out;
  }
  if (scheme == "ytcc") {
    if (toks.size() != 4) throw UsageError("ytcc needs 4 arguments");
    const int64_t h = fixed(0), a = fixed(1);
    const bool sweep_b = toks[2] == "?";
    const bool sweep_r = toks[3] == "?";
    for (int64_t b = sweep_b ? 1 : to_int(toks[2]); b < (sweep_b ? h : to_int(toks[2]) + 1);
         ++b)
      for (int64_t r = sweep_r ? 0 : to_int(toks[3]);
           r < (sweep_r ? std::min(a, b) : to_int(toks[3]) + 1); ++r)
        if (r < a && a < h && r < b && b < h && a + b <= h + r)
          out.push_back({h, a, b, r});
    if (out.empty()) throw UsageError("ytcc series has no feasible points");
    return out;
  }
  throw UsageError("unknown scheme '" + scheme + "'");
}

int run_compare(const std::string& spec_path, const std::string& out_path) {
  const std::string text = read_file(spec_path);
  std::ostringstream out;
  out << "scheme,args,K,MN_exact,MN,F,R_exact,R\n";
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string kind, scheme, args;
    if (!(ls >> kind) || kind[0] == '#') continue;
    if (!(ls >> scheme >> args))
      throw UsageError("line " + std::to_string(lineno) +
                       ": expected '<row|series> <scheme> <args>'");
    if (kind == "row") {
      emit_row(out, scheme, args, pda::baseline_params(spec_from(scheme, args)));
    } else if (kind == "series") {
      for (const auto& point : expand_series(scheme, split(args, ','))) {
        const std::string a = args_string(point);
        emit_row(out, scheme, a, pda::baseline_params(spec_from(scheme, a)));
      }
    } else {
      throw UsageError("line " + std::to_string(lineno) + ": unknown directive '" +
                       kind + "'");
    }
  }
  write_output(out_path, out.str());
  return kExitOk;
}

// ---------------------------------------------------------------------------
// simulate

int run_simulate(const std::string& path, int files, const std::string& demand_csv,
                 bool exhaustive, std::optional<int> sample_count, uint64_t seed,
                 int packet_bytes, uint64_t library_seed, int64_t max_demands,
                 const std::string& transcript_path) {
  const pda::PdaDocument doc = pda::parse_document(read_file(path));
  pda::PdaParams params;
  try {
    params = pda::verify_pda(doc.array);
  } catch (const pda::PdaError& e) {
    std::cout << e.what() << "\n";
    return kExitVerification;
  }
  const auto library =
      pda::FileLibrary::generate(files, params.packets, packet_bytes, library_seed);

  const int modes = int(!demand_csv.empty()) + int(exhaustive) + int(sample_count.has_value());
  if (modes != 1)
    throw UsageError("choose exactly one of --demand, --exhaustive, --sample");

  if (!demand_csv.empty()) {
    std::vector<int> demand;
    for (const auto& tok : split(demand_csv, ',')) demand.push_back(static_cast<int>(to_int(tok)));
    const auto caches = pda::place(doc.array, library);
    const pda::DeliveryTranscript tr = pda::deliver(doc.array, library, caches, demand);
    std::cout << "messages=" << tr.messages.size() << " decoded="
              << std::count(tr.decoded.begin(), tr.decoded.end(), true) << "/"
              << tr.decoded.size() << " load=" << pda::rational_string(tr.load) << " ("
              << pda::decimal_string(tr.load) << ")"
              << " transmitted_bytes=" << tr.transmitted_bytes << "\n";
    if (!transcript_path.empty()) {
      std::ostringstream t;
      pda::write_transcript(t, tr);
      write_output(transcript_path, t.str());
    }
    return tr.all_decoded() ? kExitOk : kExitVerification;
  }

  pda::SweepSummary summary;
  if (exhaustive) {
    pda::SweepOptions opts;
    opts.max_exhaustive_demands = max_demands;
    summary = pda::sweep_exhaustive(doc.array, library, opts);
  } else {
    summary = pda::sweep_sampled(doc.array, library, *sample_count, seed);
  }
  std::cout << "demands=" << summary.demands
            << " all_decoded=" << (summary.all_decoded ? "yes" : "no")
            << " max_load=" << pda::rational_string(summary.max_load) << " ("
            << pda::decimal_string(summary.max_load) << ")"
            << " mean_load=" << pda::rational_string(summary.mean_load) << "\n";
  return summary.all_decoded ? kExitOk : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"placement delivery array toolkit"};
  app.require_subcommand(1);

  // construct
  auto* construct = app.add_subcommand("construct", "build an array and write it");
  std::string scheme, base_path, out_path;
  std::optional<int> m, t, q, z, lambda;
  int64_t cell_budget = 10'000'000;
  construct->add_option("--scheme", scheme, "a|b|c|pm|pmt|mn|g2|transform")->required();
  construct->add_option("--m", m);
  construct->add_option("--t", t);
  construct->add_option("--q", q);
  construct->add_option("--z", z);
  construct->add_option("--base", base_path, "base PDA document");
  construct->add_option("--lambda", lambda, "derive the base assignment with this lambda");
  construct->add_option("--cell-budget", cell_budget);
  construct->add_option("-o,--out", out_path, "output file (default stdout)");

  // verify
  auto* verify = app.add_subcommand("verify", "check C1-C3 (and C4-C5 with --base)");
  std::string verify_path;
  bool verify_base = false;
  std::optional<int> verify_lambda;
  verify->add_option("file", verify_path)->required();
  verify->add_flag("--base", verify_base);
  verify->add_option("--lambda", verify_lambda);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "run placement and delivery");
  std::string sim_path, demand_csv, transcript_path;
  int files = 0;
  bool exhaustive = false;
  std::optional<int> sample_count;
  uint64_t seed = 1, library_seed = 1;
  int packet_bytes = 64;
  int64_t max_demands = 1'000'000;
  simulate->add_option("file", sim_path)->required();
  simulate->add_option("--files", files, "library size N")->required();
  simulate->add_option("--demand", demand_csv, "comma-separated demand vector");
  simulate->add_flag("--exhaustive", exhaustive);
  simulate->add_option("--sample", sample_count, "number of sampled demands");
  simulate->add_option("--seed", seed, "demand sampling seed");
  simulate->add_option("--packet-bytes", packet_bytes);
  simulate->add_option("--library-seed", library_seed);
  simulate->add_option("--max-demands", max_demands, "exhaustive sweep budget");
  simulate->add_option("--transcript", transcript_path, "write per-message records here");

  // params
  auto* params = app.add_subcommand("params", "closed-form scheme parameters");
  std::string params_scheme, params_args, params_format = "table";
  params->add_option("--scheme", params_scheme,
                     "a|b|c|mn|grouping|wclc|wcwc|ytcc|cksm1|cksm2")->required();
  params->add_option("--args", params_args, "comma-separated arguments")->required();
  params->add_option("--format", params_format, "table|csv|json");

  // compare
  auto* compare = app.add_subcommand("compare", "evaluate a spec file into CSV");
  std::string compare_specs, compare_out;
  compare->add_option("--specs", compare_specs, "spec file of row/series lines")->required();
  compare->add_option("-o,--out", compare_out, "output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (construct->parsed())
      return run_construct(scheme, m, t, q, z, base_path, lambda, cell_budget, out_path);
    if (verify->parsed()) return run_verify(verify_path, verify_base, verify_lambda);
    if (simulate->parsed())
      return run_simulate(sim_path, files, demand_csv, exhaustive, sample_count, seed,
                          packet_bytes, library_seed, max_demands, transcript_path);
    if (params->parsed()) return run_params(params_scheme, params_args, params_format);
    if (compare->parsed()) return run_compare(compare_specs, compare_out);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const pda::CellBudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const pda::BudgetExceededError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const pda::TooLargeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const pda::InvalidRangeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const pda::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const pda::VersionMismatchError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const pda::PdaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerification;
  }
  return kExitUsage;
}
