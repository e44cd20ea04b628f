/*
 * Copyright 2026 The SAMA Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#ifndef SAMA_CPABE_POLICY_H_
#define SAMA_CPABE_POLICY_H_

// Threshold-gate access trees and their text form:
//
//   expr   := term | expr OR term
//   term   := factor | term AND factor
//   factor := ATTR | "(" expr ")" | K of "(" expr { "," expr } ")"
//
// Keywords are case-insensitive. Attribute names use letters, digits and
// _ - . : @ /. A chain a AND b AND c becomes one 3-of-3 gate; explicit
// parentheses keep their own node.

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace sama::cpabe {

using AttributeSet = std::set<std::string, std::less<>>;

struct PolicyNode {
  // 0 on leaves, otherwise the number of children that must hold.
  int threshold = 0;
  std::string attribute;
  std::vector<PolicyNode> children;

  bool is_leaf() const { return threshold == 0; }

  friend bool operator==(const PolicyNode&, const PolicyNode&) = default;
};

PolicyNode Leaf(std::string attribute);
PolicyNode Gate(int threshold, std::vector<PolicyNode> children);
PolicyNode And(std::vector<PolicyNode> children);
PolicyNode Or(std::vector<PolicyNode> children);

class AccessTree {
 public:
  // Throws kMalformedTree on an empty gate, k outside [1, children], or an
  // attribute name the text form cannot carry.
  explicit AccessTree(PolicyNode root);

  const PolicyNode& root() const { return root_; }
  std::size_t LeafCount() const;
  std::size_t Depth() const;
  // Leaf attributes, left to right, with repeats.
  std::vector<std::string> Leaves() const;
  AttributeSet Attributes() const;
  // Canonical text; ParsePolicy(t.ToString()) == t.
  std::string ToString() const;

  friend bool operator==(const AccessTree&, const AccessTree&) = default;

 private:
  PolicyNode root_;
};

bool Satisfies(const PolicyNode& node, const AttributeSet& attrs);
bool Satisfies(const AccessTree& tree, const AttributeSet& attrs);

// Leaves in the leftmost minimal satisfying subtree: each gate keeps the k
// satisfiable children of least cost, ties broken by position. nullopt when
// the node is not satisfied.
std::optional<std::size_t> SatisfyingCost(const PolicyNode& node,
                                          const AttributeSet& attrs);
// Indices of the children that selection keeps, ascending. Empty when the
// gate is not satisfied.
std::vector<std::size_t> SelectChildren(const PolicyNode& gate,
                                        const AttributeSet& attrs);

// Throws PolicySyntaxError.
AccessTree ParsePolicy(std::string_view text);

}  // namespace sama::cpabe

#endif  // SAMA_CPABE_POLICY_H_
