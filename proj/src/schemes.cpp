#include "pda/schemes.hpp"

#include <numeric>

namespace pda {

namespace {

/// Fills the gain from the other four quantities.
SchemeParams finish(BigInt users, BigRat memory_ratio, BigInt subpacketization,
                    BigRat load) {
  SchemeParams p;
  p.users = std::move(users);
  p.memory_ratio = std::move(memory_ratio);
  p.subpacketization = std::move(subpacketization);
  p.load = std::move(load);
  if (p.load != 0) p.gain = BigRat(p.users) * (BigRat(1) - p.memory_ratio) / p.load;
  return p;
}

BigRat rat_pow(const BigRat& base, unsigned exp) {
  return BigRat(int_pow(boost::multiprecision::numerator(base), exp),
                int_pow(boost::multiprecision::denominator(base), exp));
}

BigInt exact_int(const BigRat& value, const char* what) {
  if (boost::multiprecision::denominator(value) != 1)
    throw InvalidRangeError(std::string(what) + " is not an integer");
  return boost::multiprecision::numerator(value);
}

bool is_prime_power(const BigInt& p) {
  if (p < 2) return false;
  for (BigInt d = 2; d * d <= p; ++d) {
    if (p % d != 0) continue;
    BigInt q = p;
    while (q % d == 0) q /= d;
    return q == 1;
  }
  return true;  // p itself is prime
}

struct BaselineVisitor {
  SchemeParams operator()(const MnSpec& s) const {
    if (s.users < 1 || s.t < 1 || s.t > s.users)
      throw InvalidRangeError("MN needs 1 <= t <= K");
    return finish(s.users, BigRat(s.t, s.users), binomial(s.users, s.t),
                  BigRat(s.users - s.t, s.t + 1));
  }

  SchemeParams operator()(const GroupingSpec& s) const {
    if (s.users < 1 || s.z < 1 || s.z > s.q || s.q > s.users)
      throw InvalidRangeError("grouping needs 1 <= z <= q <= K");
    const BigInt gcd = boost::multiprecision::gcd(s.q, s.users);
    return finish(s.users, BigRat(s.z, s.q),
                  (s.q / gcd) * binomial(s.q, s.z),
                  BigRat(s.users, s.q) * BigRat(s.q - s.z, s.z + 1));
  }

  SchemeParams operator()(const WclcSpec& s) const {
    if (s.m < 1 || s.t < 1 || s.t > s.m || s.z < 1 || s.z >= s.q)
      throw InvalidRangeError("WCLC needs z < q and t <= m");
    const BigInt step = (s.q - 1) / (s.q - s.z);  // floor
    return finish(binomial(s.m, s.t) * int_pow(s.q, s.t),
                  1 - rat_pow(BigRat(s.q - s.z, s.q), s.t),
                  int_pow(step, s.t) * int_pow(s.q, s.m - 1),
                  BigRat(int_pow(s.q - s.z, s.t), int_pow(step, s.t)));
  }

  SchemeParams operator()(const WcwcSpec& s) const {
    if (s.m < 1 || s.z < 1 || s.z >= s.q)
      throw InvalidRangeError("WCWC needs z < q and m >= 1");
    return finish(s.m * s.q, BigRat(s.z, s.q), s.z * int_pow(binomial(s.q, s.z), s.m),
                  BigRat(s.q - s.z, s.z));
  }

  SchemeParams operator()(const YtccSpec& s) const {
    if (s.r < 0 || s.r >= s.a || s.a >= s.h || s.r >= s.b || s.b >= s.h ||
        s.a + s.b > s.h + s.r)
      throw InvalidRangeError("YTCC needs r < a < H, r < b < H, a+b <= H+r");
    const BigInt fb = binomial(s.h, s.b);
    const BigRat memory = 1 - BigRat(binomial(s.a, s.r) * binomial(s.h - s.a, s.b - s.r), fb);
    const BigInt mult =
        std::min(binomial(s.h - s.a - s.b + 2 * s.r, s.r), binomial(s.a + s.b - 2 * s.r, s.a - s.r));
    return finish(binomial(s.h, s.a), memory, fb,
                  BigRat(binomial(s.h, s.a + s.b - 2 * s.r) * mult, fb));
  }

  SchemeParams operator()(const CksmProductSpec& s) const {
    if (s.m < 1 || s.t < 1 || s.m + s.t > s.k || !is_prime_power(s.p))
      throw InvalidRangeError("CKSM needs m+t <= k and prime power p >= 2");
    const auto lines = [&](int from, int count) {
      BigInt prod = 1;
      for (int i = 0; i < count; ++i) prod *= gaussian_binomial(s.p, from - i, 1);
      return prod;
    };
    const BigInt users = exact_int(
        BigRat(int_pow(s.p, s.t * (s.t - 1) / 2) * lines(s.k, s.t), factorial(s.t)),
        "CKSM user count");
    BigRat memory = 1;
    {
      BigRat prod = int_pow(s.p, s.m * s.t);
      for (int i = 0; i < s.m; ++i)
        prod *= BigRat(gaussian_binomial(s.p, s.k - s.t - i, 1),
                       gaussian_binomial(s.p, s.k - i, 1));
      memory -= prod;
    }
    const BigInt subpack = exact_int(
        BigRat(int_pow(s.p, s.m * (s.m - 1) / 2) * lines(s.k, s.m), factorial(s.m)),
        "CKSM subpacketization");
    const BigRat load =
        BigRat(factorial(s.m) * int_pow(s.p, s.m * s.t) *
                   int_pow(s.p, s.t * (s.t - 1) / 2) * lines(s.k - s.m, s.t),
               factorial(s.m + s.t));
    return finish(users, memory, subpack, load);
  }

  SchemeParams operator()(const CksmSubspaceSpec& s) const {
    if (s.m < 1 || s.t < 1 || s.m + s.t > s.k || !is_prime_power(s.p))
      throw InvalidRangeError("CKSM needs m+t <= k and prime power p >= 2");
    const BigInt f = gaussian_binomial(s.p, s.k, s.m + s.t);
    return finish(gaussian_binomial(s.p, s.k, s.t),
                  1 - BigRat(gaussian_binomial(s.p, s.k - s.t, s.m), f), f,
                  BigRat(gaussian_binomial(s.p, s.k, s.m), f));
  }

  SchemeParams operator()(const SchemeASpec& s) const {
    return scheme_a_params(s.m, s.t, s.q, s.z);
  }
  SchemeParams operator()(const SchemeBSpec& s) const {
    return scheme_b_params(s.m, s.t, s.q, s.z);
  }
  SchemeParams operator()(const SchemeCSpec& s) const {
    return scheme_c_params(s.m, s.t, s.q);
  }
};

void check_abc_range(int m, int t, int q, int z) {
  if (m < 1 || t < 1 || t > m || z < 1 || z >= q)
    throw InvalidRangeError("needs 1 <= t <= m and 1 <= z < q");
}

}  // namespace

SchemeParams scheme_a_params(int m, int t, int q, int z) {
  check_abc_range(m, t, q, z);
  return finish(binomial(m, t) * int_pow(q, t),
                1 - rat_pow(BigRat(q - z, q), t),
                int_pow(z, t) * int_pow(binomial(q, z), m),
                rat_pow(BigRat(q - z, z), t));
}

SchemeParams scheme_b_params(int m, int t, int q, int z) {
  check_abc_range(m, t, q, z);
  return finish(binomial(m, t) * int_pow(binomial(q, z), t),
                1 - rat_pow(BigRat(q - z, q), t),
                int_pow(z, t) * int_pow(q, m),
                BigRat(int_pow(binomial(q - 1, z), t), int_pow(z, t)));
}

SchemeParams scheme_c_params(int m, int t, int q) {
  if (m < 1 || t < 1 || t > m || q < 2)
    throw InvalidRangeError("needs 1 <= t <= m and q >= 2");
  return finish(binomial(m, t) * int_pow(q, 2 * t),
                1 - rat_pow(BigRat(q - 1, q), t),
                int_pow(2 * BigInt(q), m),
                rat_pow(BigRat(BigInt(q - 1) * q, 2), t));
}

SchemeParams baseline_params(const BaselineSpec& spec) {
  return std::visit(BaselineVisitor{}, spec);
}

namespace {

PdaArray check_built(PdaArray array, const SchemeParams& expect) {
  const PdaParams got = verify_pda(array);
  if (BigInt(got.users) != expect.users ||
      BigInt(got.packets) != expect.subpacketization ||
      BigRat(got.cached, got.packets) != expect.memory_ratio ||
      BigRat(got.symbols, got.packets) != expect.load)
    throw VerificationFailedError("built array disagrees with the closed-form parameters");
  return array;
}

}  // namespace

PdaArray scheme_build(const SchemeASpec& s, const ConstructOptions& opts) {
  const SchemeParams expect = scheme_a_params(s.m, s.t, s.q, s.z);
  return check_built(construct_pmt(transform_to_base(mn_pda(s.q, s.z, opts), opts),
                                   s.m, s.t, opts),
                     expect);
}

PdaArray scheme_build(const SchemeBSpec& s, const ConstructOptions& opts) {
  const SchemeParams expect = scheme_b_params(s.m, s.t, s.q, s.z);
  return check_built(
      construct_pmt(transform_to_base(transpose_pda(mn_pda(s.q, s.z, opts)), opts),
                    s.m, s.t, opts),
      expect);
}

PdaArray scheme_build(const SchemeCSpec& s, const ConstructOptions& opts) {
  const SchemeParams expect = scheme_c_params(s.m, s.t, s.q);
  return check_built(construct_pmt(g2_base_pda(s.q, opts), s.m, s.t, opts), expect);
}

std::vector<RatioEntry> compare_ratios(int m, int t, int q, int z) {
  check_abc_range(m, t, q, z);
  std::vector<RatioEntry> out;
  const auto add = [&out](std::string scheme, SchemeParams ours, SchemeParams ref) {
    if (ours.users != ref.users || ours.memory_ratio != ref.memory_ratio)
      throw VerificationFailedError("comparison pairing is not parameter-matched");
    RatioEntry e;
    e.scheme = std::move(scheme);
    e.subpacketization_ratio = BigRat(ours.subpacketization, ref.subpacketization);
    e.load_ratio = ours.load / ref.load;
    e.ours = std::move(ours);
    e.reference = std::move(ref);
    out.push_back(std::move(e));
  };

  add("A", scheme_a_params(m, t, q, z),
      baseline_params(WclcSpec{m, t, q, z}));
  add("B", scheme_b_params(m, t, q, z),
      baseline_params(WclcSpec{m, t, binomial(q, z), binomial(q - 1, z - 1)}));
  add("C", scheme_c_params(m, t, q),
      baseline_params(WclcSpec{m, t, BigInt(q) * q, q}));
  return out;
}

int smallest_fold_for_users(const BigInt& target_users, int t, const BigInt& base_users) {
  if (t < 1 || base_users < 1 || target_users < 1)
    throw InvalidRangeError("needs positive target, t and base user count");
  const BigInt per_t = int_pow(base_users, t);
  for (int m = t;; ++m) {
    if (binomial(m, t) * per_t >= target_users) return m;
  }
}

}  // namespace pda
