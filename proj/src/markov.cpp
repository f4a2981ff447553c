#include "markov_cycles/markov.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <stdexcept>

namespace markov_cycles {

namespace {

MarkovTriple sorted_last(Integer x, Integer y, Integer z) {
  // Move the largest coordinate to the end, keep the order of the others.
  if (x >= y && x >= z) return {y, z, x};
  if (y >= x && y >= z) return {x, z, y};
  return {x, y, z};
}

struct Words {
  std::vector<Integer> a, b, m;
};

Words words_along(const TreeAddress& address) {
  auto concat = [](const std::vector<Integer>& x, const std::vector<Integer>& y) {
    std::vector<Integer> out = x;
    out.insert(out.end(), y.begin(), y.end());
    return out;
  };
  Words w{{2, 2}, {1, 1}, {}};
  w.m = concat(w.a, w.b);
  for (Side s : address.path) {
    if (s == Side::Left) {
      w.a = w.m;
    } else {
      w.b = w.m;
    }
    w.m = concat(w.a, w.b);
  }
  return w;
}

}  // namespace

std::string MarkovTriple::to_string() const {
  return "(" + a.get_str() + "," + b.get_str() + "," + m.get_str() + ")";
}

bool is_markov_triple(const MarkovTriple& t) {
  return t.a > 0 && t.b > 0 && t.m >= t.a && t.m >= t.b &&
         t.a * t.a + t.b * t.b + t.m * t.m == 3 * t.a * t.b * t.m;
}

std::pair<MarkovTriple, MarkovTriple> vieta_children(const MarkovTriple& t) {
  if (!is_markov_triple(t)) throw std::invalid_argument("not a Markov triple: " + t.to_string());
  return {sorted_last(t.m, t.b, 3 * t.b * t.m - t.a), sorted_last(t.a, t.m, 3 * t.a * t.m - t.b)};
}

std::vector<MarkovTriple> vieta_neighbors(const MarkovTriple& t) {
  auto [left, right] = vieta_children(t);
  return {left, right, sorted_last(t.a, t.b, 3 * t.a * t.b - t.m)};
}

char side_letter(Side s) { return s == Side::Left ? 'L' : 'R'; }

std::string TreeAddress::to_string() const {
  if (path.empty()) return "ε";
  std::string out;
  for (Side s : path) out += side_letter(s);
  return out;
}

TreeAddress TreeAddress::parse(std::string_view text) {
  TreeAddress address;
  if (text == "ε" || text == "e" || text.empty()) return address;
  for (char c : text) {
    if (c == 'L') {
      address.path.push_back(Side::Left);
    } else if (c == 'R') {
      address.path.push_back(Side::Right);
    } else {
      throw std::invalid_argument("tree address must be a word over L and R: " + std::string(text));
    }
  }
  return address;
}

TreeAddress TreeAddress::child(Side s) const {
  TreeAddress out = *this;
  out.path.push_back(s);
  return out;
}

MarkovTriple root_triple() { return {2, 1, 5}; }

MarkovTriple triple_at(const TreeAddress& address) {
  MarkovTriple t = root_triple();
  for (Side s : address.path) {
    auto [left, right] = vieta_children(t);
    t = s == Side::Left ? left : right;
  }
  return t;
}

std::vector<Integer> plus_word_at(const TreeAddress& address) { return words_along(address).m; }

std::vector<TreeNode> enumerate_tree(int depth) {
  if (depth < 0) throw std::invalid_argument("enumerate_tree needs depth >= 0");
  std::vector<TreeNode> out{{TreeAddress{}, root_triple()}};
  std::size_t level_begin = 0;
  for (int level = 0; level < depth; ++level) {
    const std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      auto [left, right] = vieta_children(out[i].triple);
      TreeAddress base = out[i].address;
      out.push_back({base.child(Side::Left), left});
      out.push_back({base.child(Side::Right), right});
    }
    level_begin = level_end;
  }
  return out;
}

std::vector<Integer> markov_numbers(int depth) {
  std::set<Integer> numbers{1, 2};
  for (const TreeNode& node : enumerate_tree(depth)) numbers.insert(node.triple.m);
  return {numbers.begin(), numbers.end()};
}

std::vector<Integer> markov_numbers_up_to(const Integer& bound) {
  std::set<Integer> numbers;
  if (bound >= 1) numbers.insert(1);
  if (bound >= 2) numbers.insert(2);
  // m grows strictly downwards, so pruning at the bound is complete.
  std::deque<MarkovTriple> queue;
  if (root_triple().m <= bound) queue.push_back(root_triple());
  while (!queue.empty()) {
    MarkovTriple t = queue.front();
    queue.pop_front();
    numbers.insert(t.m);
    auto [left, right] = vieta_children(t);
    if (left.m <= bound) queue.push_back(left);
    if (right.m <= bound) queue.push_back(right);
  }
  return {numbers.begin(), numbers.end()};
}

std::vector<Integer> first_markov_numbers(std::size_t count) {
  Integer bound = 8;
  std::vector<Integer> numbers = markov_numbers_up_to(bound);
  while (numbers.size() < count) {
    bound *= 8;
    numbers = markov_numbers_up_to(bound);
  }
  numbers.resize(count);
  return numbers;
}

Integer markov_k(const MarkovTriple& t) {
  if (t.m == 1) return 0;
  Integer inverse;
  if (mpz_invert(inverse.get_mpz_t(), t.a.get_mpz_t(), t.m.get_mpz_t()) == 0) {
    throw std::domain_error("a is not invertible modulo m for " + t.to_string());
  }
  Integer k = inverse * t.b;
  mpz_fdiv_r(k.get_mpz_t(), k.get_mpz_t(), t.m.get_mpz_t());
  return k;
}

QuadSurd theta_from_triple(const MarkovTriple& t) {
  const Integer k = markov_k(t);
  return QuadSurd(3 * t.m - 2 * k, 1, 2 * t.m, 9 * t.m * t.m - 4);
}

double markov_constant(const Integer& m) {
  const double x = m.get_d();
  return std::sqrt(9.0 - 4.0 / (x * x));
}

double markov_constant_reciprocal(const Integer& m) { return 1.0 / markov_constant(m); }

PeriodicCF conjunction(const PeriodicCF& x, const PeriodicCF& y) {
  if (x.convention != Convention::Plus || y.convention != Convention::Plus || !x.preperiod.empty() ||
      !y.preperiod.empty()) {
    throw std::invalid_argument("conjunction expects two purely periodic '+' expansions");
  }
  PeriodicCF out = x;
  out.period.insert(out.period.end(), y.period.begin(), y.period.end());
  return out;
}

std::string Branch::descriptor() const {
  return tip.to_string() + ":" + side_letter(orientation);
}

std::string Branch::kind_name() const {
  switch (kind) {
    case BranchKind::Leftmost: return "leftmost";
    case BranchKind::Rightmost: return "rightmost";
    case BranchKind::Left: return "left";
    case BranchKind::Right: return "right";
  }
  return "";
}

Branch make_branch(const TreeAddress& node, Side orientation) {
  Branch B;
  B.orientation = orientation;
  B.tip = node;
  while (!B.tip.path.empty() && B.tip.path.back() == orientation) B.tip.path.pop_back();

  if (B.tip.path.empty()) {
    if (orientation == Side::Left) {
      B.kind = BranchKind::Leftmost;
      B.w0 = make_minus({2}, {3});
      B.a = {2, 4};
      B.b = {3};
      return B;
    }
    B.kind = BranchKind::Rightmost;
    B.w0 = minus_expand(theta_from_triple({1, 1, 2}));
  } else {
    B.kind = orientation == Side::Left ? BranchKind::Left : BranchKind::Right;
    TreeAddress parent = B.tip;
    parent.path.pop_back();
    B.w0 = minus_expand(theta_from_triple(triple_at(parent)));
  }
  const PeriodicCF w1 = minus_expand(theta_from_triple(triple_at(B.tip)));
  const std::vector<Integer> three{3};
  if (B.w0.preperiod != three || w1.preperiod != three) {
    throw std::logic_error("branch quadratics are not of the form (3; ...) at " + B.descriptor());
  }
  B.b = B.w0.period;
  if (B.kind == BranchKind::Left) {
    const std::vector<Integer>& P = w1.period;
    if (P.size() <= B.b.size() || !std::equal(B.b.rbegin(), B.b.rend(), P.rbegin())) {
      throw std::logic_error("tip period does not end with the predecessor period at " + B.descriptor());
    }
    B.a.assign(P.begin(), P.end() - static_cast<long>(B.b.size()));
  } else {
    B.a = w1.period;
  }
  return B;
}

Branch parse_branch(std::string_view descriptor) {
  const std::size_t colon = descriptor.rfind(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("branch descriptor must look like <path>:<L|R>, got " + std::string(descriptor));
  }
  const std::string_view side = descriptor.substr(colon + 1);
  if (side != "L" && side != "R") {
    throw std::invalid_argument("branch orientation must be L or R, got " + std::string(side));
  }
  return make_branch(TreeAddress::parse(descriptor.substr(0, colon)), side == "L" ? Side::Left : Side::Right);
}

PeriodicCF branch_quadratic(const Branch& B, int n) {
  if (n < 0) throw std::invalid_argument("branch index must be >= 0");
  if (n == 0) return B.w0;
  PeriodicCF out;
  out.convention = Convention::Minus;
  out.preperiod = {3};
  auto append = [&out](const std::vector<Integer>& xs, int times) {
    for (int i = 0; i < times; ++i) out.period.insert(out.period.end(), xs.begin(), xs.end());
  };
  switch (B.kind) {
    case BranchKind::Leftmost:
      out.period.emplace_back(2);
      append({3}, n);
      out.period.emplace_back(4);
      break;
    case BranchKind::Left:
      append(B.a, 1);
      append(B.b, n);
      break;
    case BranchKind::Rightmost:
    case BranchKind::Right:
      append(B.b, n - 1);
      append(B.a, 1);
      break;
  }
  return canonical(out);
}

TreeAddress branch_address(const Branch& B, int n) {
  if (n < 1) throw std::invalid_argument("branch_address needs n >= 1");
  TreeAddress out = B.tip;
  for (int i = 1; i < n; ++i) out.path.push_back(B.orientation);
  return out;
}

PeriodicCF branch_plus_word(const Branch& B, int n) {
  if (n < 0) throw std::invalid_argument("branch index must be >= 0");
  PeriodicCF out;
  out.convention = Convention::Plus;
  if (n > 0) {
    out.period = plus_word_at(branch_address(B, n));
    return out;
  }
  switch (B.kind) {
    case BranchKind::Leftmost: out.period = {1, 1}; break;
    case BranchKind::Rightmost: out.period = {2, 2}; break;
    default: {
      TreeAddress parent = B.tip;
      parent.path.pop_back();
      out.period = plus_word_at(parent);
    }
  }
  return out;
}

Integer branch_markov_number(const Branch& B, int n) {
  if (n < 0) throw std::invalid_argument("branch index must be >= 0");
  if (n > 0) return triple_at(branch_address(B, n)).m;
  switch (B.kind) {
    case BranchKind::Leftmost: return 1;
    case BranchKind::Rightmost: return 2;
    default: {
      TreeAddress parent = B.tip;
      parent.path.pop_back();
      return triple_at(parent).m;
    }
  }
}

}  // namespace markov_cycles
