#include "pda/simulator.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

namespace pda {

FileLibrary FileLibrary::generate(int files, int packets, int packet_bytes,
                                  uint64_t seed) {
  if (files < 1 || packets < 1 || packet_bytes < 1)
    throw InvalidRangeError("library needs positive file, packet and byte counts");
  FileLibrary lib;
  lib.files = files;
  lib.packets = packets;
  lib.packet_bytes = packet_bytes;
  lib.seed = seed;
  lib.data.resize(static_cast<size_t>(files) * packets * packet_bytes);
  std::mt19937_64 rng(seed);
  size_t i = 0;
  while (i + 8 <= lib.data.size()) {
    uint64_t word = rng();
    for (int b = 0; b < 8; ++b) lib.data[i++] = static_cast<uint8_t>(word >> (8 * b));
  }
  uint64_t word = rng();
  for (int b = 0; i < lib.data.size(); ++b) lib.data[i++] = static_cast<uint8_t>(word >> (8 * b));
  return lib;
}

std::span<const uint8_t> FileLibrary::packet(int file, int packet) const {
  const size_t offset =
      (static_cast<size_t>(file - 1) * packets + (packet - 1)) * packet_bytes;
  return {data.data() + offset, static_cast<size_t>(packet_bytes)};
}

bool UserCache::has(int file, int row) const {
  return std::binary_search(cached_rows.begin(), cached_rows.end(), row) && file >= 1;
}

std::span<const uint8_t> UserCache::payload(int file, int row) const {
  const auto it = std::lower_bound(cached_rows.begin(), cached_rows.end(), row);
  if (it == cached_rows.end() || *it != row)
    throw PdaError("packet not cached");
  const size_t pos = static_cast<size_t>(it - cached_rows.begin());
  const size_t offset =
      (static_cast<size_t>(file - 1) * cached_rows.size() + pos) * packet_bytes;
  return {data.data() + offset, static_cast<size_t>(packet_bytes)};
}

std::vector<UserCache> place(const PdaArray& pda, const FileLibrary& library) {
  const PdaParams params = verify_pda(pda);
  if (library.packets != params.packets)
    throw DimensionMismatchError("library has " + std::to_string(library.packets) +
                                 " packets per file, the array has " +
                                 std::to_string(params.packets) + " rows");
  std::vector<UserCache> caches(params.users);
  for (int k = 1; k <= params.users; ++k) {
    UserCache& c = caches[k - 1];
    c.user = k;
    c.packet_bytes = library.packet_bytes;
    for (int j = 1; j <= params.packets; ++j)
      if (pda.cell(j, k).is_star()) c.cached_rows.push_back(j);
    c.data.reserve(static_cast<size_t>(library.files) * c.cached_rows.size() *
                   library.packet_bytes);
    for (int n = 1; n <= library.files; ++n)
      for (int j : c.cached_rows) {
        const auto p = library.packet(n, j);
        c.data.insert(c.data.end(), p.begin(), p.end());
      }
  }
  return caches;
}

namespace {

void xor_into(std::vector<uint8_t>& acc, std::span<const uint8_t> other) {
  for (size_t i = 0; i < acc.size(); ++i) acc[i] ^= other[i];
}

DeliveryTranscript deliver_checked(const PdaArray& pda, const PdaParams& params,
                                   const FileLibrary& library,
                                   const std::vector<UserCache>& caches,
                                   const std::vector<int>& demand) {
  if (static_cast<int>(demand.size()) != params.users)
    throw BadDemandError("demand vector has " + std::to_string(demand.size()) +
                         " entries for " + std::to_string(params.users) + " users");
  for (int d : demand)
    if (d < 1 || d > library.files)
      throw BadDemandError("file " + std::to_string(d) + " is not in the library");
  if (static_cast<int>(caches.size()) != params.users)
    throw DimensionMismatchError("one cache per user is required");

  DeliveryTranscript tr;
  tr.demand = demand;
  tr.library_seed = library.seed;
  tr.files = library.files;
  tr.packets = library.packets;
  tr.packet_bytes = library.packet_bytes;
  tr.load = BigRat(params.symbols, params.packets);

  // The server transmits all S messages, one per symbol.
  tr.messages.resize(params.symbols);
  for (int k = 1; k <= params.users; ++k)
    for (int j = 1; j <= params.packets; ++j) {
      const Cell c = pda.cell(j, k);
      if (!c.is_star()) tr.messages[c.id() - 1].cells.emplace_back(j, k);
    }
  for (int s = 1; s <= params.symbols; ++s) {
    BroadcastMessage& msg = tr.messages[s - 1];
    msg.symbol = s;
    msg.payload.assign(library.packet_bytes, 0);
    for (const auto& [j, k] : msg.cells) xor_into(msg.payload, library.packet(demand[k - 1], j));
    tr.transmitted_bytes += library.packet_bytes;
  }

  // Per-user decoding, from the broadcast and the user's own cache only.
  tr.decoded.assign(params.users, false);
  std::vector<uint8_t> scratch;
  for (int k = 1; k <= params.users; ++k) {
    const int want = demand[k - 1];
    bool ok = true;
    for (int j = 1; j <= params.packets && ok; ++j) {
      const Cell c = pda.cell(j, k);
      if (c.is_star()) {
        ok = std::equal(caches[k - 1].payload(want, j).begin(),
                        caches[k - 1].payload(want, j).end(),
                        library.packet(want, j).begin());
        continue;
      }
      const BroadcastMessage& msg = tr.messages[c.id() - 1];
      scratch = msg.payload;
      for (const auto& [j2, k2] : msg.cells) {
        if (j2 == j && k2 == k) continue;
        if (!caches[k - 1].has(demand[k2 - 1], j2)) throw DecodeFailureError(k, j);
        xor_into(scratch, caches[k - 1].payload(demand[k2 - 1], j2));
      }
      ok = std::equal(scratch.begin(), scratch.end(), library.packet(want, j).begin());
    }
    tr.decoded[k - 1] = ok;
  }
  return tr;
}

}  // namespace

bool DeliveryTranscript::all_decoded() const {
  return std::all_of(decoded.begin(), decoded.end(), [](bool b) { return b; });
}

DeliveryTranscript deliver(const PdaArray& pda, const FileLibrary& library,
                           const std::vector<UserCache>& caches,
                           const std::vector<int>& demand) {
  return deliver_checked(pda, verify_pda(pda), library, caches, demand);
}

SweepSummary sweep_exhaustive(const PdaArray& pda, const FileLibrary& library,
                              const SweepOptions& opts) {
  const PdaParams params = verify_pda(pda);
  BigInt total = int_pow(library.files, params.users);
  if (total > opts.max_exhaustive_demands)
    throw BudgetExceededError("exhaustive sweep needs " + total.str() +
                              " demands, budget is " +
                              std::to_string(opts.max_exhaustive_demands));
  const auto caches = place(pda, library);

  SweepSummary summary;
  BigRat load_sum = 0;
  std::vector<int> demand(params.users, 1);
  while (true) {
    const DeliveryTranscript tr = deliver_checked(pda, params, library, caches, demand);
    ++summary.demands;
    summary.all_decoded = summary.all_decoded && tr.all_decoded();
    if (tr.load > summary.max_load) summary.max_load = tr.load;
    load_sum += tr.load;
    int i = params.users - 1;
    while (i >= 0 && demand[i] == library.files) demand[i--] = 1;
    if (i < 0) break;
    ++demand[i];
  }
  summary.mean_load = load_sum / summary.demands;
  return summary;
}

SweepSummary sweep_sampled(const PdaArray& pda, const FileLibrary& library, int count,
                           uint64_t seed) {
  if (count < 1) throw InvalidRangeError("sample count must be positive");
  const PdaParams params = verify_pda(pda);
  const auto caches = place(pda, library);
  std::mt19937_64 rng(seed);

  SweepSummary summary;
  BigRat load_sum = 0;
  std::vector<int> demand(params.users);
  for (int i = 0; i < count; ++i) {
    for (int& d : demand) d = static_cast<int>(rng() % library.files) + 1;
    const DeliveryTranscript tr = deliver_checked(pda, params, library, caches, demand);
    ++summary.demands;
    summary.all_decoded = summary.all_decoded && tr.all_decoded();
    if (tr.load > summary.max_load) summary.max_load = tr.load;
    load_sum += tr.load;
  }
  summary.mean_load = load_sum / summary.demands;
  return summary;
}

uint64_t fnv1a64(std::span<const uint8_t> bytes) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (uint8_t b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void write_transcript(std::ostream& out, const DeliveryTranscript& tr) {
  out << "library seed=" << tr.library_seed << " files=" << tr.files
      << " packets=" << tr.packets << " packet_bytes=" << tr.packet_bytes << "\n";
  out << "demand";
  for (size_t i = 0; i < tr.demand.size(); ++i) out << (i ? "," : " ") << tr.demand[i];
  out << "\n";
  for (const BroadcastMessage& msg : tr.messages) {
    out << "message " << msg.symbol << " cells=";
    for (size_t i = 0; i < msg.cells.size(); ++i) {
      if (i) out << ",";
      out << "(" << msg.cells[i].first << "," << msg.cells[i].second << ")";
    }
    out << " digest=" << std::hex << std::setw(16) << std::setfill('0')
        << fnv1a64(msg.payload) << std::dec << std::setfill(' ') << "\n";
  }
  int ok = 0;
  for (bool b : tr.decoded) ok += b;
  out << "decoded " << ok << "/" << tr.decoded.size() << " load="
      << rational_string(tr.load) << " transmitted_bytes=" << tr.transmitted_bytes
      << "\n";
}

}  // namespace pda
