#include "confid/combine.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "confid/laplace.hpp"

namespace confid {

namespace {

double clamp_cdf(double p) {
  return std::min(1.0 - kCdfClamp, std::max(kCdfClamp, p));
}

double combined_cdf_node(std::span<const SignificanceCurve> curves,
                         const LaplaceConvolution& de_l, double theta) {
  double q = 0.0;
  for (const auto& c : curves) q += de_quantile(clamp_cdf(c.cdf(theta)));
  return de_l.cdf(q);
}

}  // namespace

double combined_cdf_at(std::span<const SignificanceCurve> curves,
                       double theta) {
  if (curves.empty()) throw validation_error("combine: no input curves");
  LaplaceConvolution de_l(static_cast<int>(curves.size()));
  return combined_cdf_node(curves, de_l, theta);
}

CombinationResult combine(std::span<const SignificanceCurve> curves,
                          Exec exec) {
  if (curves.empty()) throw validation_error("combine: no input curves");

  std::vector<std::string> ids;
  for (const auto& c : curves) ids.push_back(c.provenance());

  if (curves.size() == 1)
    return CombinationResult{curves.front(), 1, std::move(ids)};

  double lo = curves.front().grid().front();
  double hi = curves.front().grid().back();
  for (const auto& c : curves) {
    lo = std::max(lo, c.grid().front());
    hi = std::min(hi, c.grid().back());
  }
  if (!(lo < hi)) {
    std::ostringstream msg;
    msg << "combine: incompatible sources, parameter spans do not overlap "
        << "(common span [" << lo << ", " << hi << "])";
    throw validation_error(msg.str());
  }

  // Sorted union of the input grids restricted to the common span.
  std::vector<double> nodes;
  for (const auto& c : curves)
    for (double x : c.grid().nodes())
      if (x >= lo && x <= hi) nodes.push_back(x);
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  if (nodes.size() < 2)
    throw validation_error("combine: common span contains fewer than 2 nodes");

  const int l = static_cast<int>(curves.size());
  const LaplaceConvolution de_l(l);
  std::vector<double> values(nodes.size());
  const std::int64_t count = static_cast<std::int64_t>(nodes.size());
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < count; ++i)
      values[i] = combined_cdf_node(curves, de_l, nodes[i]);
  } else {
    for (std::int64_t i = 0; i < count; ++i)
      values[i] = combined_cdf_node(curves, de_l, nodes[i]);
  }

  // The composed maps are monotone; a running max removes any last-ulp
  // rounding inversions deterministically.
  for (std::size_t i = 1; i < values.size(); ++i)
    values[i] = std::max(values[i], values[i - 1]);

  bool approx = false;
  for (const auto& c : curves) approx = approx || c.approximate();
  std::ostringstream prov;
  prov << "combined(L=" << l << ")";
  TailPolicy tails{values.front(), values.back()};
  SignificanceCurve curve(ParameterGrid(std::move(nodes)), std::move(values),
                          tails, prov.str(), approx);
  return CombinationResult{std::move(curve), l, std::move(ids)};
}

CombineNode CombineNode::leaf_node(int index) {
  CombineNode n;
  n.leaf = index;
  return n;
}

CombineNode CombineNode::group(std::vector<CombineNode> children) {
  CombineNode n;
  n.children = std::move(children);
  return n;
}

namespace {

SignificanceCurve combine_node(const CombineNode& node,
                               std::span<const SignificanceCurve> curves,
                               Exec exec) {
  if (node.is_leaf()) {
    if (node.leaf >= static_cast<int>(curves.size()))
      throw validation_error("combine_tree: leaf index out of range");
    return curves[node.leaf];
  }
  if (node.children.empty())
    throw validation_error("combine_tree: empty group");
  std::vector<SignificanceCurve> parts;
  parts.reserve(node.children.size());
  for (const auto& child : node.children)
    parts.push_back(combine_node(child, curves, exec));
  return combine(parts, exec).curve;
}

}  // namespace

CombinationResult combine_tree(const CombineNode& root,
                               std::span<const SignificanceCurve> curves,
                               Exec exec) {
  std::vector<std::string> ids;
  for (const auto& c : curves) ids.push_back(c.provenance());
  return CombinationResult{combine_node(root, curves, exec),
                           static_cast<int>(curves.size()), std::move(ids)};
}

namespace {

CombineNode parse_node(std::string_view expr, std::size_t& pos) {
  auto fail = [&](const std::string& why) {
    throw validation_error("tree expression: " + why + " at position " +
                           std::to_string(pos));
  };
  if (pos >= expr.size()) fail("unexpected end");
  if (expr[pos] == '(') {
    ++pos;
    std::vector<CombineNode> children;
    while (true) {
      children.push_back(parse_node(expr, pos));
      if (pos >= expr.size()) fail("missing ')'");
      if (expr[pos] == ',') {
        ++pos;
        continue;
      }
      if (expr[pos] == ')') {
        ++pos;
        break;
      }
      fail("expected ',' or ')'");
    }
    return CombineNode::group(std::move(children));
  }
  if (!std::isdigit(static_cast<unsigned char>(expr[pos])))
    fail("expected digit or '('");
  int value = 0;
  while (pos < expr.size() &&
         std::isdigit(static_cast<unsigned char>(expr[pos]))) {
    value = value * 10 + (expr[pos] - '0');
    ++pos;
  }
  return CombineNode::leaf_node(value);
}

}  // namespace

CombineNode parse_tree_expr(std::string_view expr) {
  std::string compact;
  for (char ch : expr)
    if (!std::isspace(static_cast<unsigned char>(ch))) compact.push_back(ch);
  std::size_t pos = 0;
  CombineNode node = parse_node(compact, pos);
  if (pos != compact.size())
    throw validation_error("tree expression: trailing characters");
  return node;
}

}  // namespace confid
