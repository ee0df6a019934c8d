#pragma once

// Combination of independent significance curves by the double-exponential
// rule: Ftilde(theta) = DE_L( sum_l DE^-1(F_l(theta)) ).

#include <span>
#include <string>
#include <vector>

#include "confid/curve.hpp"
#include "confid/exec.hpp"

namespace confid {

struct CombinationResult {
  SignificanceCurve curve;
  int source_count = 0;
  std::vector<std::string> source_ids;
};

// Input CDF values are clamped to [kCdfClamp, 1-kCdfClamp] before DE^-1 so
// saturated grid tails cannot produce infinite pivots.
inline constexpr double kCdfClamp = 1e-15;

// Flat combination with equal weights. The output grid is the sorted union
// of the input grids restricted to the common span. Node evaluations are
// independent, so the Parallel policy may partition the grid arbitrarily;
// results do not depend on the partitioning.
CombinationResult combine(std::span<const SignificanceCurve> curves,
                          Exec exec = Exec::Parallel);

// Point evaluation of the same map, used where only a handful of
// evaluations are needed and materializing the union grid would be waste.
double combined_cdf_at(std::span<const SignificanceCurve> curves, double theta);

// Nested grouping for sequential combination. A node is either a leaf
// (index into the curve list) or a group of children combined together.
struct CombineNode {
  int leaf = -1;
  std::vector<CombineNode> children;

  static CombineNode leaf_node(int index);
  static CombineNode group(std::vector<CombineNode> children);
  bool is_leaf() const { return leaf >= 0; }
};

// Applies combine bottom-up over the grouping. Generally differs from the
// flat combination of the same leaves (combination is not additive).
CombinationResult combine_tree(const CombineNode& root,
                               std::span<const SignificanceCurve> curves,
                               Exec exec = Exec::Parallel);

// Parses expressions like "((0,1),(2,3))" or "(0,(1,2))" into a grouping.
CombineNode parse_tree_expr(std::string_view expr);

}  // namespace confid
