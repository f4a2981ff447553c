#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "markov_cycles/analysis.hpp"

using namespace markov_cycles;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
};

/// Collects the first few failure notes.
struct Check {
  Outcome out;
  int notes = 0;
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    out.pass = false;
    if (notes++ < 3) out.detail += (out.detail.empty() ? "" : "; ") + what;
  }
};

double rel(Complex x, Complex y) { return std::abs(x - y) / std::max(1.0, std::abs(y)); }

std::string str(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::vector<QuadSurd> tree_quadratics(int depth) {
  std::vector<QuadSurd> out;
  for (const TreeNode& node : enumerate_tree(depth)) out.push_back(theta_from_triple(node.triple));
  return out;
}

Outcome markov_data() {
  Check c;
  const std::vector<MarkovTriple> figure{{2, 1, 5}, {5, 1, 13}, {2, 5, 29}, {13, 1, 34},
                                         {5, 13, 194}, {29, 5, 433}, {2, 29, 169}};
  const auto nodes = enumerate_tree(4);
  for (const MarkovTriple& t : figure) {
    const bool found = std::any_of(nodes.begin(), nodes.end(), [&](const TreeNode& n) { return n.triple == t; });
    c.expect(found, "missing " + t.to_string());
  }
  // The two singular triples sit above the root.
  const auto up = vieta_neighbors(MarkovTriple{2, 1, 5});
  c.expect(std::find(up.begin(), up.end(), MarkovTriple{1, 1, 2}) != up.end(), "no edge to (1,1,2)");
  const auto top = vieta_neighbors(MarkovTriple{1, 1, 2});
  c.expect(std::find(top.begin(), top.end(), MarkovTriple{1, 1, 1}) != top.end(), "no edge to (1,1,1)");
  for (const TreeNode& n : nodes) c.expect(is_markov_triple(n.triple), "not a Markov triple " + n.triple.to_string());

  const std::vector<Integer> expected{1, 2, 5, 13, 29, 34, 89, 169, 194};
  auto ms = markov_numbers(4);
  ms.resize(std::min(ms.size(), expected.size()));
  c.expect(ms == expected, "markov_numbers(4) prefix differs");
  c.expect(first_markov_numbers(9) == expected, "first_markov_numbers(9) differs");

  // Brute force over z <= 200.
  std::set<long> brute;
  for (long z = 1; z <= 200; ++z)
    for (long y = 1; y <= z; ++y)
      for (long x = 1; x <= y; ++x)
        if (x * x + y * y + z * z == 3 * x * y * z) brute.insert(z);
  std::vector<Integer> b(brute.begin(), brute.end());
  c.expect(markov_numbers_up_to(200) == b, "markov_numbers_up_to(200) differs from brute force");
  return c.out;
}

Outcome cf_machinery() {
  Check c;
  for (const QuadSurd& w : tree_quadratics(5)) {
    c.expect(value_of(minus_expand(w)) == w, "minus round trip " + w.to_string());
    c.expect(value_of(plus_expand(w)) == w, "plus round trip " + w.to_string());
  }
  auto rot = [](const PeriodicCF& x, std::vector<Integer> preperiod, std::vector<Integer> period) {
    return x.preperiod == preperiod && same_period_up_to_rotation(x.period, period);
  };
  c.expect(rot(plus_to_minus(make_plus({}, {1, 1})), {2}, {3}), "[(1,1)]");
  c.expect(rot(plus_to_minus(make_plus({}, {2, 2})), {3}, {2, 4}), "[(2,2)]");
  c.expect(rot(plus_to_minus(make_plus({}, {2, 2, 1, 1})), {3}, {2, 3, 4}), "[(2,2,1,1)]");
  return c.out;
}

Outcome cycle_algorithm() {
  Check c;
  const QuadSurd w = value_of(make_minus({3}, {2, 3, 4}));
  const CycleData cyc = cycle_of(w);
  c.expect(cyc.word_string() == "TTVVTV", "word " + cyc.word_string());
  c.expect(cyc.size() == 6, "ell " + std::to_string(cyc.size()));
  // Closure: undo the letters one at a time with plain surd arithmetic.
  QuadSurd x = cyc.base;
  for (Letter l : cyc.word) {
    x = l == Letter::T ? x - QuadSurd::rational(1) : x * (QuadSurd::rational(1) - x).reciprocal();
  }
  c.expect(x == cyc.base, "cycle does not close");
  c.expect(moebius_apply(cyc.automorph, cyc.base) == cyc.base, "automorph does not fix base");

  const Branch leftmost = parse_branch("ε:L");
  for (int n = 1; n <= 6; ++n) {
    const long expected = 4 + 2 * n;
    const long closed = cycle_length_closed_form(leftmost, n);
    const long actual = static_cast<long>(cycle_of(value_of(branch_quadratic(leftmost, n))).size());
    c.expect(closed == expected && actual == expected,
             "n=" + std::to_string(n) + " closed " + std::to_string(closed) + " actual " + std::to_string(actual));
  }
  return c.out;
}

Outcome length_identity() {
  Check c;
  const std::pair<long, std::pair<long, long>> pell[] = {{5, {3, 1}}, {8, {6, 2}}, {221, {15, 1}}};
  for (const auto& [D, tu] : pell) {
    c.expect(pell_fundamental(D) == std::make_pair(Integer(tu.first), Integer(tu.second)), "pell " + std::to_string(D));
  }
  const ModularFunction one = one_function();
  for (const QuadSurd& w : tree_quadratics(4)) {
    const CycleData cyc = cycle_of(w);
    const Integer disc = cyc.form.discriminant();
    const auto [t, u] = pell_fundamental(disc);
    // eps = (t + u sqrt(disc)) / 2 evaluated in long double.
    const long double eps = (static_cast<long double>(t.get_d()) +
                             static_cast<long double>(u.get_d()) * std::sqrt(static_cast<long double>(disc.get_d()))) /
                            2;
    const double expected = static_cast<double>(2 * std::log(eps));
    const CycleValue v = arc_integral(one, cyc);
    c.expect(std::abs(v.raw.real() - expected) <= 1e-9 * expected, "Re " + str(v.raw.real()) + " vs " + str(expected));
    c.expect(std::abs(v.raw.imag()) < 1e-9, "Im " + str(v.raw.imag()));
  }
  return c.out;
}

Outcome oracle_agreement() {
  Check c;
  const ModularFunction fs[] = {one_function(), j_function()};
  for (const QuadSurd& w : tree_quadratics(3)) {
    const CycleData cyc = cycle_of(w);
    for (const ModularFunction& f : fs) {
      const Complex a = arc_integral(f, cyc).raw;
      const Complex s = segment_integral(f, cyc).raw;
      c.expect(std::abs(a - s) <= 1e-9 * std::abs(s), f.name + " " + w.to_string() + " rel " + str(std::abs(a - s) / std::abs(s)));
    }
  }
  return c.out;
}

Outcome gamma_invariance() {
  Check c;
  std::mt19937_64 rng(20240601);
  const ModularFunction j = j_function();
  for (const QuadSurd& w : tree_quadratics(3)) {
    const PeriodicCF cf = minus_expand(w);
    const Complex base = normalized_value(j, cf).normalized;
    for (int k = 0; k < 10; ++k) {
      const long shift = static_cast<long>(rng() % 97);
      const Complex v = normalized_value(j, rotate_period(cf, shift)).normalized;
      c.expect(rel(v, base) <= 1e-9, cf.to_string() + " shift " + std::to_string(shift));
    }
  }
  return c.out;
}

const char* const kBranches[] = {"ε:L", "ε:R", "R:L", "L:R"};

std::vector<BranchScan>& j_scans() {
  static std::vector<BranchScan> scans = [] {
    std::vector<BranchScan> out;
    for (const char* b : kBranches) out.push_back(branch_scan(j_function(), parse_branch(b), 7));
    return out;
  }();
  return scans;
}

Outcome convergence() {
  Check c;
  for (const BranchScan& s : j_scans()) {
    std::vector<double> d;
    for (const BranchRecord& rec : s.records) d.push_back(std::abs(rec.normalized - s.records[0].normalized));
    for (int n = 3; n < 7; ++n) c.expect(d[n + 1] < d[n], s.branch.descriptor() + " d not decreasing at n=" + std::to_string(n));
    c.expect(d[6] < d[3] / 1.6, s.branch.descriptor() + " d6/d3 = " + str(d[6] / d[3]));
    c.expect(check_convergence(s).pass, s.branch.descriptor() + " report fails");
  }
  return c.out;
}

Outcome interlacing() {
  Check c;
  for (const BranchScan& s : j_scans()) {
    const auto& r = s.records;
    double margin = 0;
    for (const BranchRecord& rec : r) margin = std::max(margin, 10 * rec.error_estimate / rec.length);
    auto strictly = [&](double w0, double a, double b) {
      return std::min(w0, a) + margin < b && b < std::max(w0, a) - margin;
    };
    std::optional<int> start;
    for (int N = 6; N >= 1; --N) {
      const bool ok = strictly(r[0].normalized.real(), r[N].normalized.real(), r[N + 1].normalized.real()) &&
                      strictly(r[0].normalized.imag(), r[N].normalized.imag(), r[N + 1].normalized.imag());
      if (!ok) break;
      start = N;
    }
    c.expect(start.has_value() && *start <= 4,
             s.branch.descriptor() + " start " + (start ? std::to_string(*start) : std::string("none")));
    c.expect(check_interlacing(s).pass, s.branch.descriptor() + " report fails");
  }
  return c.out;
}

Outcome explicit_bounds() {
  Check c;
  // Left branch whose tip is the child of (3;(2,3,4)) toward (3;(2,3,3,4)).
  const Branch B = parse_branch("R:L");
  c.expect(B.kind == BranchKind::Left, "R:L is not a left branch");
  c.expect(branch_quadratic(B, 0) == make_minus({3}, {2, 3, 4}), "w0");
  const int r = B.r();
  const double lambda = std::pow(2 / (1 + std::sqrt(5.0)), 2);
  auto d1 = [&](int N) { return 80 * kPi / 3 * (2 + r * (N + 1)) * std::pow(lambda, r * N - 1); };
  auto d2 = [&](int n) { return 80 * kPi / 3 * (n + 2) * r * std::pow(lambda, r * n - 1); };
  const int N = 2;

  const BranchScan one = branch_scan(one_function(), B, 7);
  const ModularFunction j = j_function();
  const BranchScan js = branch_scan(j, B, 7);
  const double max_j = max_on_arc(j, 256);
  double sampled = 0;
  for (int k = 0; k <= 4000; ++k) sampled = std::max(sampled, std::abs(j(arc_point(kPi / 3 + kPi / 3 * k / 4000.0))));
  c.expect(max_j >= sampled, "max|j| below dense sample");

  const std::pair<const BranchScan*, double> cases[] = {{&one, 1.0}, {&js, max_j}};
  for (const auto& [scan, mf] : cases) {
    const auto& rec = scan->records;
    const Complex K = rec[N].value - static_cast<double>(N) * rec[0].value;
    for (int n = N + 1; n <= 7; ++n) {
      const double lhs = std::abs(rec[n].value - static_cast<double>(n) * rec[0].value - K);
      c.expect(lhs <= 2 * d1(N) * mf, scan->function + " th1 n=" + std::to_string(n) + " lhs " + str(lhs));
    }
    for (int n = 1; n <= 6; ++n) {
      const double lhs = std::abs(rec[n + 1].value - rec[n].value - rec[0].value);
      c.expect(lhs <= d2(n) * mf, scan->function + " th2 n=" + std::to_string(n) + " lhs " + str(lhs));
    }
  }
  // Unit versions from the f = 1 scan.
  const auto& rec = one.records;
  const double K1 = rec[N].log_epsilon - N * rec[0].log_epsilon;
  for (int n = N + 1; n <= 7; ++n) {
    c.expect(std::abs(rec[n].log_epsilon - n * rec[0].log_epsilon - K1) <= 2 * d1(N), "log eps th1 n=" + std::to_string(n));
  }
  for (int n = 1; n <= 6; ++n) {
    c.expect(std::abs(rec[n + 1].log_epsilon - rec[n].log_epsilon - rec[0].log_epsilon) <= d2(n),
             "log eps th2 n=" + std::to_string(n));
  }
  // Library reports agree.
  c.expect(std::abs(delta1(r, N) - d1(N)) < 1e-12 * d1(N) && std::abs(delta2(3, r) - d2(3)) < 1e-12 * d2(3), "delta formulas");
  c.expect(check_delta1_bound(js, max_j, N).pass && check_delta2_bound(js, max_j).pass, "j bound reports");
  c.expect(check_delta1_bound(one, 1.0, N).pass && check_delta2_bound(one, 1.0).pass, "f=1 bound reports");
  return c.out;
}

/// 40-term q-series with divisor sums computed here.
Complex oracle_j(Complex z) {
  const Complex q = std::exp(2 * kPi * Complex(0, 1) * z);
  Complex e4 = 1, e6 = 1, qn = 1;
  for (int n = 1; n <= 40; ++n) {
    qn *= q;
    double s3 = 0, s5 = 0;
    for (int d = 1; d <= n; ++d)
      if (n % d == 0) {
        s3 += std::pow(d, 3);
        s5 += std::pow(d, 5);
      }
    e4 += 240 * s3 * qn;
    e6 -= 504 * s5 * qn;
  }
  const Complex e43 = e4 * e4 * e4;
  return 1728.0 * e43 / (e43 - e6 * e6);
}

Outcome modular_evaluator() {
  Check c;
  const Complex I(0, 1);
  const Complex rho = std::exp(I * (kPi / 3));
  c.expect(std::abs(eval_j(I) - 1728.0) < 1e-8, "j(i) " + str(std::abs(eval_j(I) - 1728.0)));
  c.expect(std::abs(eval_j(rho)) < 1e-8, "j(rho) " + str(std::abs(eval_j(rho))));
  const Complex j2 = eval_j(2.0 * I);
  c.expect(std::abs(j2 - 287496.0) < 1e-4, "j(2i) " + str(std::abs(j2 - 287496.0)));
  c.expect(std::abs(j2 - oracle_j(2.0 * I)) < 1e-4, "j(2i) vs oracle");
  c.expect(std::abs(oracle_j(2.0 * I) - 287496.0) < 1e-4, "oracle j(2i)");
  for (int k = 0; k < 100; ++k) {
    const double theta = kPi / 3 + (kPi / 3) * (k + 0.5) / 100;
    const Complex z = arc_point(theta);
    const Complex v = eval_j(z);
    c.expect(rel(eval_j(z + 1.0), v) < 1e-9, "j(z+1) at " + str(theta));
    c.expect(rel(eval_j(-1.0 / z), v) < 1e-9, "j(-1/z) at " + str(theta));
  }
  return c.out;
}

/// Integer interval [lo, hi] containing S * w.
std::pair<Integer, Integer> scaled_bounds(const QuadSurd& w, const Integer& S) {
  Integer root;
  const Integer rad = S * S * w.q() * w.q() * w.D();
  mpz_sqrt(root.get_mpz_t(), rad.get_mpz_t());
  const int sign = w.q() >= 0 ? 1 : -1;
  // sign * sqrt(rad) lies in [root, root + 1) or (-root - 1, -root].
  Integer num_lo = S * w.p() + (sign > 0 ? root : Integer(-root - 1));
  Integer num_hi = S * w.p() + (sign > 0 ? Integer(root + 1) : Integer(-root));
  Integer lo, hi;
  mpz_fdiv_q(lo.get_mpz_t(), num_lo.get_mpz_t(), w.r().get_mpz_t());
  mpz_cdiv_q(hi.get_mpz_t(), num_hi.get_mpz_t(), w.r().get_mpz_t());
  return {lo, hi};
}

/// Decides |u - v| <= B exactly by interval refinement. 0 = holds,
/// 1 = violated, 2 = undecided.
int compare_distance(const QuadSurd& u, const QuadSurd& v, const QuadSurd& B) {
  for (int digits = 30; digits <= 3000; digits *= 2) {
    Integer S;
    mpz_ui_pow_ui(S.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    const auto [ul, uh] = scaled_bounds(u, S);
    const auto [vl, vh] = scaled_bounds(v, S);
    const auto [bl, bh] = scaled_bounds(B, S);
    const Integer dlo = ul - vh, dhi = uh - vl;
    const Integer abs_hi = abs(dlo) > abs(dhi) ? Integer(abs(dlo)) : Integer(abs(dhi));
    Integer abs_lo = 0;
    if (dlo > 0) abs_lo = dlo;
    if (dhi < 0) abs_lo = -dhi;
    if (abs_hi <= bl) return 0;
    if (abs_lo > bh) return 1;
  }
  return 2;
}

Outcome shared_prefix_distance() {
  Check c;
  std::mt19937_64 rng(77);
  auto random_address = [&](int max_depth) {
    TreeAddress a;
    const int depth = static_cast<int>(rng() % (max_depth + 1));
    for (int i = 0; i < depth; ++i) a = a.child(rng() % 2 ? Side::Left : Side::Right);
    return a;
  };
  auto digit = [](const PeriodicCF& cf, std::size_t k) {
    return k < cf.preperiod.size() ? cf.preperiod[k] : cf.period[(k - cf.preperiod.size()) % cf.period.size()];
  };
  // The comparison must be able to say no.
  const QuadSurd root = theta_from_triple(root_triple());
  const QuadSurd left = theta_from_triple(triple_at(TreeAddress::parse("L")));
  c.expect(compare_distance(root, left, QuadSurd::rational(0)) == 1, "comparison cannot fail");
  c.expect(compare_distance(root, left, coincide_distance_bound_exact(40)) == 1, "tiny bound accepted");
  int pairs = 0;
  int shared_hist_max = 0;
  int attempts = 0;
  while (pairs < 200 && attempts < 100000) {
    ++attempts;
    // Half of the pairs share a branch so that long common prefixes occur.
    TreeAddress x = random_address(7), y;
    if (attempts % 2) {
      y = x;
      const Side s = rng() % 2 ? Side::Left : Side::Right;
      const int k = 1 + static_cast<int>(rng() % 4);
      for (int i = 0; i < k; ++i) y = y.child(s);
    } else {
      y = random_address(7);
    }
    if (x == y) continue;
    const QuadSurd u = theta_from_triple(triple_at(x));
    const QuadSurd v = theta_from_triple(triple_at(y));
    const PeriodicCF cu = minus_expand(u), cv = minus_expand(v);
    std::size_t shared = 0;
    while (shared < 400 && digit(cu, shared) == digit(cv, shared)) ++shared;
    if (shared == 0) continue;
    const int r = std::min<int>(static_cast<int>(shared) - 1, 12);
    shared_hist_max = std::max(shared_hist_max, r);
    const int verdict = compare_distance(u, v, coincide_distance_bound_exact(r));
    c.expect(verdict == 0, x.to_string() + " vs " + y.to_string() + " r=" + std::to_string(r) +
                               (verdict == 1 ? " violated" : " undecided"));
    ++pairs;
  }
  c.expect(pairs == 200, "only " + std::to_string(pairs) + " pairs");
  c.expect(shared_hist_max >= 8, "no long shared prefixes (max r " + std::to_string(shared_hist_max) + ")");
  if (c.out.pass) c.out.detail = "200 pairs, max r " + std::to_string(shared_hist_max);
  return c.out;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"Markov data exactness", markov_data},
      {"CF machinery", cf_machinery},
      {"Cycle algorithm", cycle_algorithm},
      {"Length identity", length_identity},
      {"Arc/segment oracle agreement", oracle_agreement},
      {"Rotation invariance", gamma_invariance},
      {"Convergence along branches", convergence},
      {"Interlacing along branches", interlacing},
      {"Explicit bounds", explicit_bounds},
      {"Modular evaluator", modular_evaluator},
      {"Shared prefix distance", shared_prefix_distance},
  };
  int failed = 0;
  int index = 1;
  for (const auto& [name, run] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %2d %s (%.2f s)%s%s\n", o.pass ? "PASS" : "FAIL", index, name, secs,
                o.detail.empty() ? "" : ": ", o.detail.c_str());
    failed += !o.pass;
    ++index;
  }
  std::printf("%d/%d criteria passed\n", index - 1 - failed, index - 1);
  return failed == 0 ? 0 : 1;
}
