#include "ncdh/attacks.hpp"

#include <atomic>
#include <chrono>
#include <limits>
#include <thread>

namespace ncdh {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::uint64_t to_u64(const Natural& n, const char* what) {
  if (n > std::numeric_limits<std::uint64_t>::max()) throw ResourceCap(std::string(what) + " exceeds 64 bits");
  return static_cast<std::uint64_t>(n);
}

std::string bytes_key(const PlatformMatrix& m) {
  const auto b = to_bytes(m);
  return std::string(b.begin(), b.end());
}

void require_platform_token(const PlatformMatrix& m, const PrimeModulus& p, const char* what) {
  if (m.size() != 2 || m(0, 0).modulus() != p.value()) throw FormatError(std::string(what) + " is not over the params field");
  if (!is_invertible(m)) throw NotInvertible(std::string(what) + " is not invertible");
}

struct Eigenpair {
  QuadExtElement first;
  QuadExtElement second;
};

// Roots of x^2 - tr x + det in F_p^2 (both may lie in F_p).
std::optional<Eigenpair> eigenvalues(const CharPoly& cp, const QuadExtParams& ext) {
  const PrimeModulus p = cp.trace.prime();
  const FieldElement disc = cp.trace * cp.trace - FieldElement(4, p) * cp.det;
  const FieldElement half = inverse(FieldElement(2, p));
  const FieldElement zero(0, p);
  QuadExtElement root = QuadExtElement::embed(zero, ext);
  if (const auto roots = sqrt_all(disc); !roots.empty()) {
    root = QuadExtElement::embed(roots.front(), ext);
  } else {
    // disc = s^2 d, so sqrt(disc) = s t.
    const auto s = sqrt_all(disc * inverse(ext.nonresidue()));
    if (s.empty()) return std::nullopt;
    root = QuadExtElement(zero, s.front(), ext);
  }
  const QuadExtElement tr = QuadExtElement::embed(cp.trace, ext);
  const QuadExtElement h = QuadExtElement::embed(half, ext);
  return Eigenpair{(tr + root) * h, (tr - root) * h};
}

std::string qkey(const QuadExtElement& e) {
  return std::to_string(e.c0().value()) + ":" + std::to_string(e.c1().value());
}

// Nonzero (x, y) with x (P - Y) + y (J P - Y J) = 0, i.e. T P = Y T for
// T = x I + y J, subject to x^2 != y^2.
std::optional<TorusElement> solve_torus(const FieldMatrix& power, const FieldMatrix& y) {
  const PrimeModulus p = power(0, 0).prime();
  const FieldElement zero(0, p), one(1, p);
  const FieldMatrix swap(2, {zero, one, one, zero});
  const FieldMatrix u = power - y;
  const FieldMatrix v = swap * power - y * swap;
  const auto& ue = u.entries();
  const auto& ve = v.entries();
  const bool u_zero = std::all_of(ue.begin(), ue.end(), [](const FieldElement& e) { return e.is_zero(); });
  const bool v_zero = std::all_of(ve.begin(), ve.end(), [](const FieldElement& e) { return e.is_zero(); });
  std::optional<std::pair<FieldElement, FieldElement>> kernel;
  if (u_zero) {
    kernel.emplace(one, zero);
  } else if (v_zero) {
    kernel.emplace(zero, one);
  } else {
    // v = c u for some c, else the kernel is trivial.
    std::size_t pivot = 0;
    while (ue[pivot].is_zero()) ++pivot;
    const FieldElement c = ve[pivot] * inverse(ue[pivot]);
    for (std::size_t k = 0; k < 4; ++k) {
      if (ve[k] != c * ue[k]) return std::nullopt;
    }
    kernel.emplace(-c, one);
  }
  if (kernel->first * kernel->first == kernel->second * kernel->second) return std::nullopt;
  return TorusElement(kernel->first, kernel->second);
}

}  // namespace

std::optional<std::uint64_t> dlog_bsgs(const FieldElement& g, const FieldElement& h, std::uint64_t order) {
  return dlog_bsgs_generic<FieldElement, std::uint64_t>(g, h, order, one_like(g),
                                                         [](const FieldElement& e) { return e.value(); });
}

std::optional<std::uint64_t> dlog_bsgs(const QuadExtElement& g, const QuadExtElement& h, std::uint64_t order) {
  return dlog_bsgs_generic<QuadExtElement, std::string>(
      g, h, order, QuadExtElement::embed(one_like(g.c0()), g.params()), qkey);
}

std::optional<Congruence> merge(const Congruence& a, const Congruence& b) {
  // x = a.r + a.m k with a.m k = b.r - a.r (mod b.m).
  const Natural g = boost::multiprecision::gcd(a.modulus, b.modulus);
  const Natural diff = b.residue - a.residue;
  if (diff % g != 0) return std::nullopt;
  const Natural m1 = a.modulus / g, m2 = b.modulus / g;
  // Natural is signed, so extended Euclid needs no sign bookkeeping.
  Natural r0 = m1 % m2, r1 = m2, s0 = 1, s1 = 0;
  while (r1 != 0) {
    const Natural q = r0 / r1;
    r0 -= q * r1;
    std::swap(r0, r1);
    s0 -= q * s1;
    std::swap(s0, s1);
  }
  Natural k = (diff / g) % m2 * s0 % m2;
  if (k < 0) k += m2;
  const Natural modulus = a.modulus * m2;
  Natural residue = (a.residue + a.modulus * k) % modulus;
  if (residue < 0) residue += modulus;
  return Congruence{residue, modulus};
}

std::string to_string(ScanMode mode) { return mode == ScanMode::Naive ? "naive" : "normalized"; }

ScanMode scan_mode_from_string(const std::string& name) {
  if (name == "naive") return ScanMode::Naive;
  if (name == "normalized") return ScanMode::Normalized;
  throw std::invalid_argument("unknown scan mode '" + name + "'");
}

std::uint64_t candidate_count(ScanMode mode, std::uint64_t p) {
  return mode == ScanMode::Naive ? p * p : p - 1;
}

std::optional<std::pair<std::uint64_t, std::uint64_t>> candidate_at(ScanMode mode, std::uint64_t p,
                                                                    std::uint64_t index) {
  if (mode == ScanMode::Naive) {
    const std::uint64_t x = index / p, y = index % p;
    // x^2 = y^2 iff y = x or y = -x
    if (y == x || y == (p - x) % p) return std::nullopt;
    return std::pair{x, y};
  }
  // Every torus element is a central scalar times T_{0,1} or T_{1,m}, m != +-1.
  if (index == 0) return std::pair<std::uint64_t, std::uint64_t>{0, 1};
  return std::pair<std::uint64_t, std::uint64_t>{1, index == 1 ? 0 : index};
}

AttackReport<PlatformMatrix> algorithm41(const PublicParams& params, const PlatformMatrix& y_a,
                                         const PlatformMatrix& y_b, ScanMode mode, const AttackLimits& limits) {
  const auto start = Clock::now();
  const PrimeModulus& p = params.p;
  require_platform_token(y_a, p, "Y_A");
  require_platform_token(y_b, p, "Y_B");
  if (params.n > limits.max_table) throw ResourceCap("order n exceeds the table limit");
  const std::uint64_t p_cap = mode == ScanMode::Naive ? limits.max_p_naive : limits.max_p_normalized;
  if (p.value() > p_cap) throw ResourceCap("p exceeds the " + to_string(mode) + " scan limit");

  // Step 1: X^1 .. X^n, sorted by canonical bytes.
  const std::uint64_t n = to_u64(params.n, "order n");
  std::vector<std::pair<std::string, std::uint64_t>> table;
  table.reserve(n);
  PlatformMatrix power = params.x;
  for (std::uint64_t k = 1; k <= n; ++k) {
    table.emplace_back(bytes_key(power), k);
    if (k < n) power = power * params.x;
  }
  std::sort(table.begin(), table.end());
  auto lookup = [&](const std::string& key) -> std::optional<std::uint64_t> {
    auto it = std::lower_bound(table.begin(), table.end(), key,
                               [](const auto& entry, const std::string& k) { return entry.first < k; });
    if (it != table.end() && it->first == key) return it->second;
    return std::nullopt;
  };

  // Step 2: scan torus candidates over disjoint index ranges.
  const std::uint64_t total = candidate_count(mode, p.value());
  const unsigned threads = std::max(1u, limits.threads);
  std::atomic<std::uint64_t> best_index{std::numeric_limits<std::uint64_t>::max()};
  std::atomic<std::uint64_t> tested{0};
  std::vector<std::optional<std::uint64_t>> hit_power(threads);
  std::vector<std::uint64_t> hit_index(threads, std::numeric_limits<std::uint64_t>::max());

  auto worker = [&](unsigned w) {
    const std::uint64_t begin = total * w / threads, end = total * (w + 1) / threads;
    std::uint64_t local_tested = 0;
    for (std::uint64_t idx = begin; idx < end && idx < best_index.load(std::memory_order_relaxed); ++idx) {
      const auto cand = candidate_at(mode, p.value(), idx);
      if (!cand) continue;
      const TorusElement t(FieldElement(cand->first, p), FieldElement(cand->second, p));
      ++local_tested;
      const PlatformMatrix image = t.as_platform() * y_a * t.inverse().as_platform();
      if (auto k = lookup(bytes_key(image))) {
        hit_power[w] = k;
        hit_index[w] = idx;
        std::uint64_t cur = best_index.load();
        while (idx < cur && !best_index.compare_exchange_weak(cur, idx)) {
        }
        break;
      }
    }
    tested += local_tested;
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
    for (auto& th : pool) th.join();
  }

  AttackReport<PlatformMatrix> report;
  report.mode = to_string(mode);
  report.table_size = n;
  report.candidates_tested = tested.load();
  report.ops = report.table_size + report.candidates_tested;

  const auto winner = std::min_element(hit_index.begin(), hit_index.end()) - hit_index.begin();
  if (!hit_power[static_cast<std::size_t>(winner)]) {
    report.elapsed_ms = ms_since(start);
    throw Exhausted("no torus candidate conjugates Y_A into <X> (" + std::to_string(report.candidates_tested) +
                    " candidates tested)");
  }
  // Step 3.
  const auto cand = *candidate_at(mode, p.value(), hit_index[static_cast<std::size_t>(winner)]);
  const TorusElement t0(FieldElement(cand.first, p), FieldElement(cand.second, p));
  const Natural k0 = *hit_power[static_cast<std::size_t>(winner)];
  report.recovered_a = k0;
  report.a_modulus = params.n;
  report.recovered_t = t0.inverse();
  report.recovered_k = t0.inverse().as_platform() * mat_pow(y_b, k0) * t0.as_platform();
  report.elapsed_ms = ms_since(start);
  return report;
}

CharPoly charpoly2(const FieldMatrix& m) {
  if (m.size() != 2) throw std::invalid_argument("charpoly2 needs a 2x2 matrix");
  return {m(0, 0) + m(1, 1), m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)};
}

CommutativeTranscript make_commutative_transcript(const PrimeModulus& p, Rng& rng, EigenSplit split) {
  const FieldElement zero(0, p), one(1, p);
  const FieldMatrix swap(2, {zero, one, one, zero});
  auto draw = [&] { return FieldElement(uniform_below(rng, p.value()), p); };
  for (;;) {
    const FieldMatrix x(2, {draw(), draw(), draw(), draw()});
    const CharPoly cp = charpoly2(x);
    if (cp.det.is_zero()) continue;
    const FieldElement disc = cp.trace * cp.trace - FieldElement(4, p) * cp.det;
    const int ls = legendre(disc);
    if (ls == 0) continue;
    if (split == EigenSplit::Split && ls != 1) continue;
    if (split == EigenSplit::Irreducible && ls != -1) continue;
    if (swap * x == x * swap) continue;
    const Natural n = field_matrix_order(x);
    if (n < 3) continue;
    auto torus = [&] {
      for (;;) {
        const FieldElement tx = draw(), ty = draw();
        if (tx * tx == ty * ty) continue;
        TorusElement t(tx, ty);
        if (t.as_field() * x != x * t.as_field()) return t;
      }
    };
    const Natural a = uniform_between(rng, 2, n - 1);
    const Natural b = uniform_between(rng, 2, n - 1);
    const TorusElement t_a = torus(), t_b = torus();
    const FieldMatrix y_a = t_a.as_field() * mat_pow(x, a) * t_a.inverse().as_field();
    const FieldMatrix y_b = t_b.as_field() * mat_pow(x, b) * t_b.inverse().as_field();
    const FieldMatrix k = t_a.as_field() * mat_pow(y_b, a) * t_a.inverse().as_field();
    return CommutativeTranscript{CommutativeInstance{p, x, y_a, y_b}, n, a, b, t_a, t_b, k};
  }
}

Congruence det_reduction(const CommutativeInstance& inst) {
  const FieldElement dx = determinant(inst.x);
  const FieldElement dy = determinant(inst.y_a);
  if (dx.is_zero() || dy.is_zero()) throw NotInvertible("transcript matrices must be invertible");
  const Natural m = multiplicative_order(dx);
  if (m == 1) throw Uninformative("det X = 1 carries no information about a");
  const auto r = dlog_bsgs(dx, dy, to_u64(m, "ord(det X)"));
  if (!r) throw Exhausted("det Y_A is not a power of det X");
  return Congruence{*r, m};
}

AttackReport<FieldMatrix> eigen_attack(const CommutativeInstance& inst) {
  const auto start = Clock::now();
  const PrimeModulus& p = inst.p;
  if (inst.x(0, 1).is_zero() && inst.x(1, 0).is_zero() && inst.x(0, 0) == inst.x(1, 1)) {
    throw ScalarX("X is scalar, conjugation leaves nothing to compare");
  }
  const QuadExtParams ext(p);
  const CharPoly cx = charpoly2(inst.x), cy = charpoly2(inst.y_a);
  if (cx.det.is_zero() || cy.det.is_zero()) throw NotInvertible("transcript matrices must be invertible");
  const auto ex = eigenvalues(cx, ext);
  if (!ex || ex->first == ex->second) throw RepeatedEigenvalue("X has a repeated eigenvalue");
  const auto ey = eigenvalues(cy, ext);
  if (!ey) throw NoTorusSolution("Y_A has no eigenvalues over F_p^2");

  AttackReport<FieldMatrix> report;
  report.mode = "eigen";
  const Natural m1 = multiplicative_order(ex->first), m2 = multiplicative_order(ex->second);
  const std::uint64_t o1 = to_u64(m1, "eigenvalue order"), o2 = to_u64(m2, "eigenvalue order");
  const std::pair<QuadExtElement, QuadExtElement> pairings[2] = {{ey->first, ey->second}, {ey->second, ey->first}};
  for (const auto& [mu1, mu2] : pairings) {
    const auto r1 = dlog_bsgs(ex->first, mu1, o1);
    const auto r2 = dlog_bsgs(ex->second, mu2, o2);
    report.ops += 2;
    if (!r1 || !r2) continue;
    const auto c = merge(Congruence{*r1, m1}, Congruence{*r2, m2});
    if (!c) continue;
    ++report.candidates_tested;
    const FieldMatrix power = mat_pow(inst.x, c->residue);
    if (charpoly2(power) != cy) continue;
    const auto t = solve_torus(power, inst.y_a);
    if (!t) continue;
    report.recovered_a = c->residue;
    report.a_modulus = c->modulus;
    report.recovered_t = *t;
    report.recovered_k = t->as_field() * mat_pow(inst.y_b, c->residue) * t->inverse().as_field();
    report.elapsed_ms = ms_since(start);
    return report;
  }
  throw NoTorusSolution("no exponent candidate admits a torus conjugator");
}

NcScanReport nc_reduction_scan(const PrimeModulus& p, std::uint64_t trials, Rng& rng) {
  NcScanReport report;
  auto square_det_defined = [](const PlatformMatrix& m) {
    return singular_components(wedderburn_forward(m(1, 1))).empty();
  };
  while (report.trials < trials) {
    PlatformMatrix x(2, {random_algebra_element(rng, p), random_algebra_element(rng, p),
                         random_algebra_element(rng, p), random_algebra_element(rng, p)});
    if (!is_invertible(x) || !square_det_defined(x)) continue;
    const PlatformMatrix x2 = x * x;
    if (!square_det_defined(x2)) continue;
    const AlgebraElement d = nc_det(x);
    ++report.trials;
    if (nc_det(x2) != d * d) ++report.differs;
  }
  return report;
}

}  // namespace ncdh
