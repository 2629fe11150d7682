#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>

#include "ncdh/field.hpp"
#include "ncdh/platform.hpp"
#include "ncdh/protocol.hpp"

namespace ncdh {

/// Least x >= 0 with g^x = h, or nullopt. `order` must be a multiple of the
/// order of g. Uses O(sqrt(order)) time and memory.
template <typename G, typename Key, typename KeyFn>
std::optional<std::uint64_t> dlog_bsgs_generic(const G& g, const G& h, std::uint64_t order, const G& one,
                                               KeyFn key) {
  if (order == 0) throw std::invalid_argument("dlog_bsgs: zero order");
  const auto m = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<long double>(order))));
  std::unordered_map<Key, std::uint64_t> baby;
  baby.reserve(m);
  G cur = one;
  for (std::uint64_t j = 0; j < m; ++j) {
    baby.emplace(key(cur), j);  // keeps the smallest j
    cur = cur * g;
  }
  const G giant = inverse(cur);  // g^{-m}
  G gamma = h;
  for (std::uint64_t i = 0; i <= m; ++i) {
    if (auto it = baby.find(key(gamma)); it != baby.end()) return i * m + it->second;
    gamma = gamma * giant;
  }
  return std::nullopt;
}

std::optional<std::uint64_t> dlog_bsgs(const FieldElement& g, const FieldElement& h, std::uint64_t order);
std::optional<std::uint64_t> dlog_bsgs(const QuadExtElement& g, const QuadExtElement& h, std::uint64_t order);

/// x = residue (mod modulus).
struct Congruence {
  Natural residue;
  Natural modulus;
  bool contains(const Natural& x) const { return x % modulus == residue; }
  friend bool operator==(const Congruence&, const Congruence&) = default;
};

/// Intersection of two congruences with arbitrary moduli; nullopt if disjoint.
std::optional<Congruence> merge(const Congruence& a, const Congruence& b);

template <typename M>
struct AttackReport {
  std::optional<Natural> recovered_a;
  /// Modulus the exponent is known to, when only a residue class is recovered.
  std::optional<Natural> a_modulus;
  std::optional<TorusElement> recovered_t;
  std::optional<M> recovered_k;
  std::uint64_t candidates_tested = 0;
  std::uint64_t table_size = 0;
  /// Group-operation units: table powers plus candidate conjugations.
  std::uint64_t ops = 0;
  double elapsed_ms = 0;
  std::string mode;
};

enum class ScanMode { Naive, Normalized };
std::string to_string(ScanMode mode);
ScanMode scan_mode_from_string(const std::string& name);

/// Desk-scale guardrails for the table-and-scan attack.
struct AttackLimits {
  Natural max_table = Natural(1) << 22;
  std::uint64_t max_p_naive = 1 << 12;
  std::uint64_t max_p_normalized = std::uint64_t{1} << 24;
  unsigned threads = 1;
};

/// Number of torus candidates each mode visits for modulus p.
std::uint64_t candidate_count(ScanMode mode, std::uint64_t p);
/// The index-th candidate (x, y) in scan order, or nullopt when the pair is
/// not a torus element (naive mode skips these without counting them).
std::optional<std::pair<std::uint64_t, std::uint64_t>> candidate_at(ScanMode mode, std::uint64_t p,
                                                                    std::uint64_t index);

/// Tabulates X^1..X^n, then scans torus elements T with T Y_A T^{-1} in the
/// table. On a hit (k0, T0) reports a = k0, T = T0^{-1} and
/// K = T0^{-1} Y_B^{k0} T0. Throws Exhausted when no candidate matches and
/// ResourceCap when n or p exceed the limits.
AttackReport<PlatformMatrix> algorithm41(const PublicParams& params, const PlatformMatrix& y_a,
                                         const PlatformMatrix& y_b, ScanMode mode, const AttackLimits& limits = {});

/// A transcript of the same protocol run over GL_2(F_p).
struct CommutativeInstance {
  PrimeModulus p;
  FieldMatrix x;
  FieldMatrix y_a;
  FieldMatrix y_b;
};

/// Instance plus the honest secrets, for harnesses.
struct CommutativeTranscript {
  CommutativeInstance instance;
  Natural n;
  Natural a;
  Natural b;
  TorusElement t_a;
  TorusElement t_b;
  FieldMatrix k;
};

enum class EigenSplit { Any, Split, Irreducible };

/// Seeded honest run over GL_2(F_p) with a non-scalar X of distinct
/// eigenvalues (in F_p or F_p^2 as requested) and order >= 3.
CommutativeTranscript make_commutative_transcript(const PrimeModulus& p, Rng& rng, EigenSplit split = EigenSplit::Any);

struct CharPoly {
  FieldElement trace;
  FieldElement det;
  friend bool operator==(const CharPoly&, const CharPoly&) = default;
};

/// x^2 - trace x + det.
CharPoly charpoly2(const FieldMatrix& m);

/// a mod ord(det X) from det(Y_A) = det(X)^a. Throws Uninformative when
/// det X = 1 and Exhausted when det Y_A is not a power of det X.
Congruence det_reduction(const CommutativeInstance& inst);

/// Recovers a (mod ord X), a torus conjugator and K from eigenvalue
/// discrete logs. Throws ScalarX, RepeatedEigenvalue or NoTorusSolution.
AttackReport<FieldMatrix> eigen_attack(const CommutativeInstance& inst);

struct NcScanReport {
  std::uint64_t trials = 0;
  std::uint64_t differs = 0;
  double rate() const { return trials ? static_cast<double>(differs) / static_cast<double>(trials) : 0.0; }
};

/// Draws `trials` invertible X over F_p[S_3] for which D(X) and D(X^2)
/// exist (I = J = (1, 2)) and counts D(X^2) != D(X)^2.
NcScanReport nc_reduction_scan(const PrimeModulus& p, std::uint64_t trials, Rng& rng);

}  // namespace ncdh
