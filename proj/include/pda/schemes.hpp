#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pda/constructors.hpp"
#include "pda/rational.hpp"

namespace pda {

/// Exact closed-form parameters of a coded caching scheme.
struct SchemeParams {
  BigInt users;                 // K
  BigRat memory_ratio;          // M/N
  BigInt subpacketization;      // F
  BigRat load;                  // R
  std::optional<BigRat> gain;   // K(1-M/N)/R, absent when R = 0

  friend bool operator==(const SchemeParams&, const SchemeParams&) = default;
};

/// Scheme A: the union construction applied to the base PDA obtained from
/// the MN PDA. K = C(m,t) q^t, M/N = 1-((q-z)/q)^t, F = z^t C(q,z)^m,
/// R = ((q-z)/z)^t.
SchemeParams scheme_a_params(int m, int t, int q, int z);

/// Scheme B: same with the transposed MN PDA. K = C(m,t) C(q,z)^t,
/// F = z^t q^m, R = C(q-1,z)^t / z^t.
SchemeParams scheme_b_params(int m, int t, int q, int z);

/// Scheme C: same with the (q^2, 2q, 2, (q-1)q^2) base family.
/// K = C(m,t) q^(2t), F = (2q)^m, R = ((q-1)q/2)^t.
SchemeParams scheme_c_params(int m, int t, int q);

// Closed-form baselines. Field names follow each scheme's own parameter
// conventions.
struct MnSpec { BigInt users; BigInt t; };
struct GroupingSpec { BigInt users; BigInt q; BigInt z; };
struct WclcSpec { int m; int t; BigInt q; BigInt z; };
struct WcwcSpec { int m; BigInt q; BigInt z; };
struct YtccSpec { int h; int a; int b; int r; };
/// Projective-geometry baseline, product form (factorial/power products).
struct CksmProductSpec { BigInt p; int k; int t; int m; };
/// Projective-geometry baseline, subspace-counting form (Gaussian binomial
/// ratios).
struct CksmSubspaceSpec { BigInt p; int k; int t; int m; };
struct SchemeASpec { int m; int t; int q; int z; };
struct SchemeBSpec { int m; int t; int q; int z; };
struct SchemeCSpec { int m; int t; int q; };

using BaselineSpec =
    std::variant<MnSpec, GroupingSpec, WclcSpec, WcwcSpec, YtccSpec, CksmProductSpec,
                 CksmSubspaceSpec, SchemeASpec, SchemeBSpec, SchemeCSpec>;

SchemeParams baseline_params(const BaselineSpec& spec);

/// Builds the actual array of a scheme A/B/C instance and checks its
/// verified parameters against the closed forms (K, F, Z/F = M/N and
/// S = R*F, exactly).
PdaArray scheme_build(const SchemeASpec&, const ConstructOptions& opts = {});
PdaArray scheme_build(const SchemeBSpec&, const ConstructOptions& opts = {});
PdaArray scheme_build(const SchemeCSpec&, const ConstructOptions& opts = {});

/// One scheme-vs-reference comparison at matched user count and memory
/// ratio.
struct RatioEntry {
  std::string scheme;        // "A", "B" or "C"
  SchemeParams ours;
  SchemeParams reference;    // the matched-parameter reference scheme
  BigRat subpacketization_ratio;
  BigRat load_ratio;
};

/// Compares schemes A, B and C against the matched reference instances:
/// A against (m,t,q,z) itself, B against (m,t,C(q,z),C(q-1,z-1)) and C
/// against (m,t,q^2,q). The user count and memory ratio of each pair agree
/// exactly; the ratios returned are exact rationals.
std::vector<RatioEntry> compare_ratios(int m, int t, int q, int z);

/// Smallest m with C(m,t)*base_users^t >= target_users: the fold count that
/// covers a user population by treating the shortfall as virtual users.
int smallest_fold_for_users(const BigInt& target_users, int t, const BigInt& base_users);

}  // namespace pda
