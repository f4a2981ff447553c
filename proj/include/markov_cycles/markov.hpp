#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "markov_cycles/contfrac.hpp"
#include "markov_cycles/exact.hpp"

namespace markov_cycles {

/// Solution of x^2 + y^2 + z^2 = 3xyz written as (a, b, m) with m maximal.
struct MarkovTriple {
  Integer a;
  Integer b;
  Integer m;

  std::string to_string() const;
  friend bool operator==(const MarkovTriple&, const MarkovTriple&) = default;
};

bool is_markov_triple(const MarkovTriple& t);

/// The two Vieta involutions (m, b, 3bm - a) and (a, m, 3am - b).
std::pair<MarkovTriple, MarkovTriple> vieta_children(const MarkovTriple& t);
/// All three Vieta images, each with its largest coordinate last. For (1,1,2)
/// this includes the back edge to (1,1,1).
std::vector<MarkovTriple> vieta_neighbors(const MarkovTriple& t);

enum class Side { Left, Right };

char side_letter(Side s);

/// Word over {L, R} from the root (2,1,5). The empty word prints as "ε".
struct TreeAddress {
  std::vector<Side> path;

  std::string to_string() const;
  static TreeAddress parse(std::string_view text);
  std::size_t depth() const { return path.size(); }
  TreeAddress child(Side s) const;
  friend bool operator==(const TreeAddress&, const TreeAddress&) = default;
};

MarkovTriple root_triple();
MarkovTriple triple_at(const TreeAddress& address);

/// '+' period of the quadratic attached to the node: [1,1] for m = 1,
/// [2,2] for m = 2, and the conjunction of the predecessors' words below.
std::vector<Integer> plus_word_at(const TreeAddress& address);

struct TreeNode {
  TreeAddress address;
  MarkovTriple triple;
};

/// Breadth first, LEFT before RIGHT, levels 0..depth.
std::vector<TreeNode> enumerate_tree(int depth);

/// Sorted distinct Markov numbers occurring up to the given tree depth,
/// including the singular values 1 and 2.
std::vector<Integer> markov_numbers(int depth);
/// All Markov numbers <= bound.
std::vector<Integer> markov_numbers_up_to(const Integer& bound);
/// The first `count` Markov numbers.
std::vector<Integer> first_markov_numbers(std::size_t count);

/// Least k >= 0 with a k = b mod m.
Integer markov_k(const MarkovTriple& t);
/// (3m - 2k + sqrt(9m^2 - 4)) / (2m).
QuadSurd theta_from_triple(const MarkovTriple& t);

/// sqrt(9 - 4/m^2), as printed.
double markov_constant(const Integer& m);
/// 1 / sqrt(9 - 4/m^2); 1/sqrt 5, 1/sqrt 8, 5/sqrt 221, ...
double markov_constant_reciprocal(const Integer& m);

/// Concatenation of two pure '+' periods.
PeriodicCF conjunction(const PeriodicCF& x, const PeriodicCF& y);

enum class BranchKind { Leftmost, Rightmost, Left, Right };

/// A zigzag-free downward path. w_1 is the tip, w_0 the predecessor of the
/// tip on the side of the orientation.
struct Branch {
  TreeAddress tip;
  Side orientation = Side::Left;
  BranchKind kind = BranchKind::Leftmost;
  PeriodicCF w0;
  /// w_n = (3; a, b^n) on left branches, (3; b^(n-1), a) on right branches.
  /// The leftmost branch uses a = (2,4), b = (3) for the length formula only.
  std::vector<Integer> a;
  std::vector<Integer> b;

  int r() const { return static_cast<int>(b.size()); }
  std::string descriptor() const;
  std::string kind_name() const;
};

/// "<path>:<L|R>"; the path may name any node on the branch. Throws
/// std::invalid_argument on malformed input.
Branch parse_branch(std::string_view descriptor);
Branch make_branch(const TreeAddress& node, Side orientation);

/// '-' expansion of w_n; n = 0 gives w_0.
PeriodicCF branch_quadratic(const Branch& B, int n);
/// '+' period of w_n built by repeated conjunction (independent of the
/// closed forms).
PeriodicCF branch_plus_word(const Branch& B, int n);
/// Node of w_n for n >= 1.
TreeAddress branch_address(const Branch& B, int n);
/// Markov number of w_n, n >= 0.
Integer branch_markov_number(const Branch& B, int n);

}  // namespace markov_cycles
