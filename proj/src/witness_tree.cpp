// Copyright 2026 The lll-resample Authors.
// SPDX-License-Identifier: Apache-2.0

#include "lll/witness_tree.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>

#include "lll/error.hpp"

namespace lll {

WitnessTree::WitnessTree(EventId root_label, std::uint64_t attach_step) {
  vertices_.push_back(TreeVertex{root_label, -1, 0, attach_step, {}});
}

std::uint32_t WitnessTree::add_child(std::uint32_t parent, EventId label,
                                     std::uint64_t attach_step) {
  if (parent >= vertices_.size())
    throw Error(ErrorCode::invalid_argument, "add_child: unknown parent vertex");
  const auto idx = static_cast<std::uint32_t>(vertices_.size());
  const auto depth = vertices_[parent].depth + 1;
  vertices_.push_back(
      TreeVertex{label, static_cast<std::int32_t>(parent), depth, attach_step, {}});
  vertices_[parent].children.push_back(idx);
  return idx;
}

std::uint32_t WitnessTree::depth() const noexcept {
  std::uint32_t d = 0;
  for (const auto& v : vertices_) d = std::max(d, v.depth);
  return d;
}

namespace {

void write_text(const WitnessTree& tree, std::uint32_t v, std::string& out) {
  const auto& vx = tree.vertex(v);
  out += std::to_string(vx.label);
  if (vx.children.empty()) return;
  out += '(';
  for (std::size_t i = 0; i < vx.children.size(); ++i) {
    if (i) out += ',';
    write_text(tree, vx.children[i], out);
  }
  out += ')';
}

std::string canonical(const WitnessTree& tree, std::uint32_t v) {
  const auto& vx = tree.vertex(v);
  std::string out = std::to_string(vx.label);
  if (vx.children.empty()) return out;
  std::vector<std::pair<EventId, std::string>> kids;
  kids.reserve(vx.children.size());
  for (auto c : vx.children) kids.emplace_back(tree.vertex(c).label, canonical(tree, c));
  std::sort(kids.begin(), kids.end());
  out += '(';
  for (std::size_t i = 0; i < kids.size(); ++i) {
    if (i) out += ',';
    out += kids[i].second;
  }
  out += ')';
  return out;
}

class TreeParser {
 public:
  explicit TreeParser(std::string_view text) : text_(text) {}

  WitnessTree parse() {
    skip_ws();
    WitnessTree tree(label());
    children(tree, 0);
    skip_ws();
    if (pos_ != text_.size()) fail("trailing characters");
    return tree;
  }

 private:
  void children(WitnessTree& tree, std::uint32_t parent) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != '(') return;
    ++pos_;
    while (true) {
      skip_ws();
      const auto child = tree.add_child(parent, label());
      children(tree, child);
      skip_ws();
      if (pos_ >= text_.size()) fail("unterminated child list");
      if (text_[pos_] == ',') {
        ++pos_;
        continue;
      }
      if (text_[pos_] == ')') {
        ++pos_;
        return;
      }
      fail("expected ',' or ')'");
    }
  }

  EventId label() {
    EventId v = 0;
    const auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
    if (ec != std::errc{}) fail("expected an event id");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return v;
  }

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\n')) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(1, "witness tree at column " + std::to_string(pos_ + 1) + ": " + what);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string WitnessTree::to_text() const {
  std::string out;
  if (!vertices_.empty()) write_text(*this, 0, out);
  return out;
}

std::string WitnessTree::canonical_text() const {
  return vertices_.empty() ? std::string{} : canonical(*this, 0);
}

WitnessTree WitnessTree::from_text(std::string_view text) { return TreeParser(text).parse(); }

WitnessTree build_witness_tree(const ExecutionLog& log, std::size_t t,
                               const DependencyGraph& graph) {
  if (t < 1 || t > log.size())
    throw Error(ErrorCode::invalid_argument, "build_witness_tree: step out of range");
  const auto m = graph.num_events();

  // host[e]: deepest (then earliest) vertex whose label has e in its
  // inclusive neighbourhood.
  constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> host(m, kNone);
  std::vector<std::uint32_t> host_depth(m, 0);

  WitnessTree tree(log.at(t), t);
  auto register_vertex = [&](std::uint32_t idx) {
    const auto& vx = tree.vertex(idx);
    for (EventId e : graph.inclusive_neighbors(vx.label)) {
      if (host[e] == kNone || vx.depth > host_depth[e]) {
        host[e] = idx;
        host_depth[e] = vx.depth;
      }
    }
  };
  register_vertex(0);
  for (std::size_t i = t - 1; i >= 1; --i) {
    const EventId e = log.at(i);
    if (host[e] == kNone) continue;
    register_vertex(tree.add_child(host[e], e, i));
  }
  return tree;
}

// The depth of tau_C(t) is the longest chain t > s_1 > ... > s_k of steps
// whose consecutive labels are in each other's inclusive neighbourhood. For
// each label the latest step carries the longest chain.
std::vector<std::uint32_t> witness_tree_depths(const ExecutionLog& log,
                                               const DependencyGraph& graph) {
  constexpr std::int64_t kNone = -1;
  std::vector<std::int64_t> latest(graph.num_events(), kNone);
  std::vector<std::uint32_t> out;
  out.reserve(log.size());
  for (EventId e : log.steps()) {
    std::int64_t best = kNone;
    for (EventId b : graph.inclusive_neighbors(e)) best = std::max(best, latest[b]);
    const auto depth = static_cast<std::uint32_t>(best + 1);
    latest[e] = depth;
    out.push_back(depth);
  }
  return out;
}

bool is_proper(const WitnessTree& tree) {
  std::vector<EventId> labels;
  for (const auto& v : tree.vertices()) {
    labels.clear();
    for (auto c : v.children) labels.push_back(tree.vertex(c).label);
    std::sort(labels.begin(), labels.end());
    if (std::adjacent_find(labels.begin(), labels.end()) != labels.end()) return false;
  }
  return true;
}

bool respects_graph(const WitnessTree& tree, const DependencyGraph& graph) {
  for (const auto& v : tree.vertices()) {
    if (v.label >= graph.num_events()) return false;
    for (auto c : v.children) {
      if (!graph.in_inclusive(v.label, tree.vertex(c).label)) return false;
    }
  }
  return true;
}

bool levels_independent(const WitnessTree& tree, const ProblemInstance& instance) {
  std::map<std::uint32_t, std::vector<EventId>> levels;
  for (const auto& v : tree.vertices()) levels[v.depth].push_back(v.label);
  for (const auto& [depth, labels] : levels) {
    for (std::size_t i = 0; i < labels.size(); ++i) {
      const auto& si = instance.event(labels[i]).support;
      for (std::size_t j = i + 1; j < labels.size(); ++j) {
        const auto& sj = instance.event(labels[j]).support;
        auto a = si.begin();
        auto b = sj.begin();
        while (a != si.end() && b != sj.end()) {
          if (*a == *b) return false;
          if (*a < *b) ++a; else ++b;
        }
      }
    }
  }
  return true;
}

std::vector<std::uint32_t> check_order(const WitnessTree& tree) {
  std::vector<std::uint32_t> order(tree.size());
  for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return tree.vertex(a).depth > tree.vertex(b).depth;
  });
  return order;
}

bool tree_check(const WitnessTree& tree, const ProblemInstance& instance,
                const SampleSource& source) {
  std::map<VarId, std::uint64_t> used;
  std::vector<Value> vals;
  for (auto idx : check_order(tree)) {
    const auto& ev = instance.event(tree.vertex(idx).label);
    vals.resize(ev.support.size());
    for (std::size_t i = 0; i < ev.support.size(); ++i) {
      auto& count = used[ev.support[i]];
      vals[i] = source.peek_at(ev.support[i], count);
      ++count;
    }
    if (!ev.violated(vals)) return false;
  }
  return true;
}

double tree_check_probability(const WitnessTree& tree, const ProblemInstance& instance) {
  double p = 1.0;
  for (const auto& v : tree.vertices()) p *= exact_probability(instance, v.label);
  return p;
}

std::optional<WitnessTree> gw_sample(EventId root, const XAssignment& x,
                                     const DependencyGraph& graph, std::mt19937_64& rng,
                                     std::uint32_t depth_limit, std::size_t vertex_limit) {
  if (x.size() != graph.num_events() || root >= graph.num_events())
    throw Error(ErrorCode::invalid_argument, "gw_sample: root / x / graph mismatch");
  WitnessTree tree(root);
  std::vector<std::uint32_t> level{0};
  std::vector<std::uint32_t> next;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  while (!level.empty()) {
    next.clear();
    for (auto v : level) {
      const EventId label = tree.vertex(v).label;
      for (EventId b : graph.inclusive_neighbors(label)) {
        if (unit(rng) < x[b]) {
          if (tree.vertex(v).depth + 1 > depth_limit || tree.size() >= vertex_limit)
            return std::nullopt;
          next.push_back(tree.add_child(v, b));
        }
      }
    }
    level.swap(next);
  }
  return tree;
}

double x_prime(EventId e, const XAssignment& x, const DependencyGraph& graph) {
  double p = x[e];
  for (EventId c : graph.neighbors(e)) p *= 1.0 - x[c];
  return p;
}

double gw_tree_probability(const WitnessTree& tree, const XAssignment& x,
                           const DependencyGraph& graph) {
  if (tree.empty()) throw Error(ErrorCode::invalid_argument, "empty tree");
  if (!is_proper(tree)) throw Error(ErrorCode::improper_tree, "tree is not proper");
  if (!respects_graph(tree, graph)) return 0.0;
  const EventId root = tree.root_label();
  double p = (1.0 - x[root]) / x[root];
  for (const auto& v : tree.vertices()) p *= x_prime(v.label, x, graph);
  return p;
}

TreeSizeRange shrink_range_bound(std::size_t u, std::size_t k) {
  if (u < 1) throw Error(ErrorCode::invalid_argument, "shrink_range_bound: u must be >= 1");
  return {u, (k + 1) * u};
}

std::uint64_t count_trees(const DependencyGraph& graph, TreeSizeRange range) {
  if (range.lo < 1 || range.hi < range.lo) return 0;
  const auto m = graph.num_events();
  // cnt[a][s]: proper trees of size s rooted at a. The child forest of a root
  // labelled a picks a subset of its inclusive neighbourhood, so the size
  // generating function satisfies T_a(z) = z * prod_{b} (1 + T_b(z)).
  std::vector<std::vector<long double>> cnt(m, std::vector<long double>(range.hi + 1, 0.0L));
  std::vector<long double> poly, tmp;
  for (std::size_t s = 1; s <= range.hi; ++s) {
    for (std::size_t a = 0; a < m; ++a) {
      poly.assign(s, 0.0L);
      poly[0] = 1.0L;
      for (EventId b : graph.inclusive_neighbors(static_cast<EventId>(a))) {
        tmp.assign(s, 0.0L);
        for (std::size_t i = 0; i < s; ++i) {
          if (poly[i] == 0.0L) continue;
          tmp[i] += poly[i];
          for (std::size_t j = 1; i + j < s; ++j) tmp[i + j] += poly[i] * cnt[b][j];
        }
        poly.swap(tmp);
      }
      cnt[a][s] = poly[s - 1];
    }
  }
  long double total = 0.0L;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t s = range.lo; s <= range.hi; ++s) total += cnt[a][s];
  }
  if (total >= static_cast<long double>(std::numeric_limits<std::uint64_t>::max()))
    return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(std::llround(static_cast<double>(total)));
}

namespace {

struct Node {
  EventId label;
  std::uint32_t num_children;
};
using Encoded = std::vector<Node>;  // preorder

class Enumerator {
 public:
  Enumerator(const DependencyGraph& graph, const DependencyGraph* independence,
             std::uint64_t cap)
      : graph_(graph), independence_(independence), cap_(cap), subsets_(graph.num_events()) {
    for (std::size_t a = 0; a < graph.num_events(); ++a) {
      const auto inc = graph.inclusive_neighbors(static_cast<EventId>(a));
      if (inc.size() > 20)
        throw Error(ErrorCode::explosion_guard, "inclusive neighbourhood too large to enumerate");
      auto& subs = subsets_[a];
      for (std::uint32_t mask = 1; mask < (1u << inc.size()); ++mask) {
        std::vector<EventId> s;
        for (std::size_t i = 0; i < inc.size(); ++i) {
          if (mask & (1u << i)) s.push_back(inc[i]);
        }
        subs.push_back(std::move(s));
      }
      std::sort(subs.begin(), subs.end());
    }
  }

  const std::vector<Encoded>& trees(EventId a, std::size_t size) {
    const auto key = std::make_pair(a, size);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<Encoded> out;
    if (size == 1) {
      out.push_back({Node{a, 0}});
    } else {
      for (const auto& subset : subsets_[a]) {
        if (subset.size() > size - 1) continue;
        std::vector<std::size_t> parts(subset.size());
        compositions(size - 1, 0, parts, [&](const std::vector<std::size_t>& p) {
          combine(a, subset, p, out);
        });
      }
    }
    stored_ += out.size();
    if (stored_ > cap_)
      throw Error(ErrorCode::explosion_guard, "tree enumeration exceeds the configured cap");
    return memo_.emplace(key, std::move(out)).first->second;
  }

 private:
  template <typename F>
  void compositions(std::size_t remaining, std::size_t i, std::vector<std::size_t>& parts,
                    F&& emit) {
    const std::size_t left = parts.size() - i;
    if (left == 1) {
      parts[i] = remaining;
      emit(parts);
      return;
    }
    for (std::size_t first = 1; first + (left - 1) <= remaining; ++first) {
      parts[i] = first;
      compositions(remaining - first, i + 1, parts, emit);
    }
  }

  void combine(EventId a, const std::vector<EventId>& subset,
               const std::vector<std::size_t>& parts, std::vector<Encoded>& out) {
    std::vector<const std::vector<Encoded>*> lists;
    for (std::size_t i = 0; i < subset.size(); ++i) {
      lists.push_back(&trees(subset[i], parts[i]));
      if (lists.back()->empty()) return;
    }
    std::vector<std::size_t> idx(subset.size(), 0);
    while (true) {
      Encoded enc;
      enc.push_back(Node{a, static_cast<std::uint32_t>(subset.size())});
      for (std::size_t i = 0; i < subset.size(); ++i) {
        const auto& child = (*lists[i])[idx[i]];
        enc.insert(enc.end(), child.begin(), child.end());
      }
      if (!independence_ || realizable(enc)) out.push_back(std::move(enc));
      // Last child varies fastest.
      std::size_t k = subset.size();
      while (k > 0) {
        --k;
        if (++idx[k] < lists[k]->size()) break;
        idx[k] = 0;
        if (k == 0) return;
      }
      if (subset.empty()) return;
    }
  }

  bool realizable(const Encoded& enc) const {
    std::vector<std::uint32_t> depth(enc.size(), 0);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> stack;  // (depth, remaining)
    for (std::size_t i = 0; i < enc.size(); ++i) {
      while (!stack.empty() && stack.back().second == 0) stack.pop_back();
      if (!stack.empty()) {
        depth[i] = stack.back().first + 1;
        --stack.back().second;
      }
      stack.emplace_back(depth[i], enc[i].num_children);
    }
    for (std::size_t i = 0; i < enc.size(); ++i) {
      for (std::size_t j = i + 1; j < enc.size(); ++j) {
        if (depth[i] == depth[j] && independence_->in_inclusive(enc[i].label, enc[j].label))
          return false;
      }
    }
    return true;
  }

  const DependencyGraph& graph_;
  const DependencyGraph* independence_;
  std::uint64_t cap_;
  std::uint64_t stored_ = 0;
  std::vector<std::vector<std::vector<EventId>>> subsets_;
  std::map<std::pair<EventId, std::size_t>, std::vector<Encoded>> memo_;
};

WitnessTree decode(const Encoded& enc) {
  WitnessTree tree(enc[0].label);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> stack{{0u, enc[0].num_children}};
  for (std::size_t i = 1; i < enc.size(); ++i) {
    while (stack.back().second == 0) stack.pop_back();
    --stack.back().second;
    const auto v = tree.add_child(stack.back().first, enc[i].label);
    stack.emplace_back(v, enc[i].num_children);
  }
  return tree;
}

}  // namespace

std::vector<WitnessTree> enumerate_trees(const ProblemInstance& instance,
                                         const DependencyGraph& graph, TreeSizeRange range,
                                         const EnumerationOptions& options) {
  if (range.lo < 1) throw Error(ErrorCode::invalid_argument, "tree size range must start at 1 or above");
  if (options.realizable_only && graph.num_events() != instance.num_events())
    throw Error(ErrorCode::invalid_argument, "graph / instance size mismatch");
  if (range.hi < range.lo) return {};

  std::optional<DependencyGraph> independence;
  if (options.realizable_only) {
    independence = build_dependency_graph(instance);
  } else if (count_trees(graph, range) > options.cap) {
    throw Error(ErrorCode::explosion_guard, "tree enumeration exceeds the configured cap");
  }

  Enumerator gen(graph, independence ? &*independence : nullptr, options.cap);
  std::vector<WitnessTree> out;
  for (std::size_t s = range.lo; s <= range.hi; ++s) {
    for (std::size_t a = 0; a < graph.num_events(); ++a) {
      for (const auto& enc : gen.trees(static_cast<EventId>(a), s)) {
        out.push_back(decode(enc));
        if (out.size() > options.cap)
          throw Error(ErrorCode::explosion_guard, "tree enumeration exceeds the configured cap");
      }
    }
  }
  return out;
}

}  // namespace lll
