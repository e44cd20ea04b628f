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


#include "sama/cpabe/policy.h"

#include <algorithm>
#include <cctype>
#include <utility>

#include "sama/common/errors.h"

namespace sama::cpabe {
namespace {

bool IsAttributeChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
         c == '.' || c == ':' || c == '@' || c == '/';
}

bool EqualsIgnoreCase(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

bool IsKeyword(std::string_view word) {
  return EqualsIgnoreCase(word, "and") || EqualsIgnoreCase(word, "or") ||
         EqualsIgnoreCase(word, "of");
}

bool IsNumber(std::string_view word) {
  return !word.empty() && std::all_of(word.begin(), word.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c));
  });
}

void Validate(const PolicyNode& node) {
  if (node.is_leaf()) {
    if (!node.children.empty()) {
      throw Error(ErrorCode::kMalformedTree, "leaf with children");
    }
    if (node.attribute.empty() ||
        !std::all_of(node.attribute.begin(), node.attribute.end(),
                     IsAttributeChar) ||
        IsKeyword(node.attribute)) {
      throw Error(ErrorCode::kMalformedTree,
                  "bad attribute name '" + node.attribute + "'");
    }
    return;
  }
  const int n = static_cast<int>(node.children.size());
  if (n == 0 || node.threshold < 1 || node.threshold > n) {
    throw Error(ErrorCode::kMalformedTree,
                "gate threshold " + std::to_string(node.threshold) + " with " +
                    std::to_string(n) + " children");
  }
  for (const auto& c : node.children) Validate(c);
}

std::size_t CountLeaves(const PolicyNode& node) {
  if (node.is_leaf()) return 1;
  std::size_t n = 0;
  for (const auto& c : node.children) n += CountLeaves(c);
  return n;
}

std::size_t NodeDepth(const PolicyNode& node) {
  std::size_t d = 0;
  for (const auto& c : node.children) d = std::max(d, NodeDepth(c));
  return d + 1;
}

void CollectLeaves(const PolicyNode& node, std::vector<std::string>& out) {
  if (node.is_leaf()) {
    out.push_back(node.attribute);
    return;
  }
  for (const auto& c : node.children) CollectLeaves(c, out);
}

std::string Print(const PolicyNode& node) {
  if (node.is_leaf()) return node.attribute;
  const std::size_t n = node.children.size();
  const auto k = static_cast<std::size_t>(node.threshold);
  std::string out;
  if (n >= 2 && (k == n || k == 1)) {
    const char* op = k == n ? " AND " : " OR ";
    for (std::size_t i = 0; i < n; ++i) {
      if (i) out += op;
      const auto& c = node.children[i];
      out += c.is_leaf() ? Print(c) : "(" + Print(c) + ")";
    }
    return out;
  }
  out = std::to_string(k) + " of (";
  for (std::size_t i = 0; i < n; ++i) {
    if (i) out += ", ";
    out += Print(node.children[i]);
  }
  return out + ")";
}

enum class Tok { kWord, kLParen, kRParen, kComma, kEnd };

struct Token {
  Tok kind;
  std::string_view text;
  std::size_t pos;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) { Advance(); }

  PolicyNode ParseAll() {
    PolicyNode root = Expr();
    if (cur_.kind != Tok::kEnd) Fail("unexpected '" + Show(cur_) + "'");
    return root;
  }

 private:
  void Advance() {
    while (at_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[at_]))) {
      ++at_;
    }
    if (at_ == text_.size()) {
      cur_ = {Tok::kEnd, {}, at_};
      return;
    }
    const char c = text_[at_];
    if (c == '(' || c == ')' || c == ',') {
      cur_ = {c == '(' ? Tok::kLParen : c == ')' ? Tok::kRParen : Tok::kComma,
              text_.substr(at_, 1), at_};
      ++at_;
      return;
    }
    if (!IsAttributeChar(c)) {
      throw PolicySyntaxError(at_, std::string("unexpected character '") + c +
                                       "'");
    }
    const std::size_t start = at_;
    while (at_ < text_.size() && IsAttributeChar(text_[at_])) ++at_;
    cur_ = {Tok::kWord, text_.substr(start, at_ - start), start};
  }

  static std::string Show(const Token& t) {
    return t.kind == Tok::kEnd ? "end of input" : std::string(t.text);
  }

  [[noreturn]] void Fail(const std::string& msg) const {
    throw PolicySyntaxError(cur_.pos, msg);
  }

  bool AtKeyword(std::string_view kw) const {
    return cur_.kind == Tok::kWord && EqualsIgnoreCase(cur_.text, kw);
  }

  void Expect(Tok kind, const char* what) {
    if (cur_.kind != kind) {
      Fail(std::string("expected ") + what + ", found '" + Show(cur_) + "'");
    }
    Advance();
  }

  PolicyNode Expr() {
    std::vector<PolicyNode> terms;
    terms.push_back(Term());
    while (AtKeyword("or")) {
      Advance();
      terms.push_back(Term());
    }
    if (terms.size() == 1) return std::move(terms.front());
    return Or(std::move(terms));
  }

  PolicyNode Term() {
    std::vector<PolicyNode> factors;
    factors.push_back(Factor());
    while (AtKeyword("and")) {
      Advance();
      factors.push_back(Factor());
    }
    if (factors.size() == 1) return std::move(factors.front());
    return And(std::move(factors));
  }

  PolicyNode Factor() {
    if (cur_.kind == Tok::kLParen) {
      Advance();
      PolicyNode inner = Expr();
      Expect(Tok::kRParen, "')'");
      return inner;
    }
    if (cur_.kind != Tok::kWord || IsKeyword(cur_.text)) {
      Fail("expected attribute, found '" + Show(cur_) + "'");
    }
    const Token word = cur_;
    Advance();
    if (!IsNumber(word.text) || !AtKeyword("of")) {
      return Leaf(std::string(word.text));
    }
    Advance();
    Expect(Tok::kLParen, "'('");
    std::vector<PolicyNode> children;
    children.push_back(Expr());
    while (cur_.kind == Tok::kComma) {
      Advance();
      children.push_back(Expr());
    }
    Expect(Tok::kRParen, "')'");
    const std::string digits(word.text);
    const int k = digits.size() > 9 ? -1 : std::stoi(digits);
    if (k < 1 || k > static_cast<int>(children.size())) {
      throw PolicySyntaxError(word.pos,
                              "threshold " + digits + " outside [1, " +
                                  std::to_string(children.size()) + "]");
    }
    return Gate(k, std::move(children));
  }

  std::string_view text_;
  std::size_t at_ = 0;
  Token cur_{Tok::kEnd, {}, 0};
};

}  // namespace

PolicyNode Leaf(std::string attribute) {
  PolicyNode n;
  n.attribute = std::move(attribute);
  return n;
}

PolicyNode Gate(int threshold, std::vector<PolicyNode> children) {
  PolicyNode n;
  n.threshold = threshold;
  n.children = std::move(children);
  return n;
}

PolicyNode And(std::vector<PolicyNode> children) {
  const int k = static_cast<int>(children.size());
  return Gate(k, std::move(children));
}

PolicyNode Or(std::vector<PolicyNode> children) {
  return Gate(1, std::move(children));
}

AccessTree::AccessTree(PolicyNode root) : root_(std::move(root)) {
  Validate(root_);
}

std::size_t AccessTree::LeafCount() const { return CountLeaves(root_); }

std::size_t AccessTree::Depth() const { return NodeDepth(root_); }

std::vector<std::string> AccessTree::Leaves() const {
  std::vector<std::string> out;
  CollectLeaves(root_, out);
  return out;
}

AttributeSet AccessTree::Attributes() const {
  const auto leaves = Leaves();
  return AttributeSet(leaves.begin(), leaves.end());
}

std::string AccessTree::ToString() const { return Print(root_); }

bool Satisfies(const PolicyNode& node, const AttributeSet& attrs) {
  if (node.is_leaf()) return attrs.count(node.attribute) > 0;
  int held = 0;
  for (const auto& c : node.children) {
    if (Satisfies(c, attrs) && ++held >= node.threshold) return true;
  }
  return false;
}

bool Satisfies(const AccessTree& tree, const AttributeSet& attrs) {
  return Satisfies(tree.root(), attrs);
}

namespace {

// (cost, index) of the k cheapest satisfiable children, or empty.
std::vector<std::pair<std::size_t, std::size_t>> Rank(
    const PolicyNode& gate, const AttributeSet& attrs) {
  std::vector<std::pair<std::size_t, std::size_t>> ranked;
  for (std::size_t i = 0; i < gate.children.size(); ++i) {
    if (auto cost = SatisfyingCost(gate.children[i], attrs)) {
      ranked.emplace_back(*cost, i);
    }
  }
  const auto k = static_cast<std::size_t>(gate.threshold);
  if (ranked.size() < k) return {};
  std::sort(ranked.begin(), ranked.end());
  ranked.resize(k);
  return ranked;
}

}  // namespace

std::vector<std::size_t> SelectChildren(const PolicyNode& gate,
                                        const AttributeSet& attrs) {
  std::vector<std::size_t> picked;
  for (const auto& [cost, index] : Rank(gate, attrs)) picked.push_back(index);
  std::sort(picked.begin(), picked.end());
  return picked;
}

std::optional<std::size_t> SatisfyingCost(const PolicyNode& node,
                                          const AttributeSet& attrs) {
  if (node.is_leaf()) {
    if (attrs.count(node.attribute)) return 1;
    return std::nullopt;
  }
  const auto ranked = Rank(node, attrs);
  if (ranked.empty()) return std::nullopt;
  std::size_t total = 0;
  for (const auto& [cost, index] : ranked) total += cost;
  return total;
}

AccessTree ParsePolicy(std::string_view text) {
  return AccessTree(Parser(text).ParseAll());
}

}  // namespace sama::cpabe
