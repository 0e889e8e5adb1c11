#include "kindred/deps.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <functional>
#include <queue>
#include <utility>

namespace kindred {
namespace {

void check_bound(const SurfaceType& t, const Program& p,
                 std::set<std::string>& out) {
  using Tag = SurfaceType::Tag;
  switch (t.tag()) {
    case Tag::kCon:
      if (p.find(t.name()) == nullptr) {
        throw KindError(ErrorCode::kUnboundTyCon,
                        fmt::format("type constructor {} is not in scope",
                                    t.name()),
                        t.pos());
      }
      out.insert(t.name());
      return;
    case Tag::kApp:
      check_bound(t.fun(), p, out);
      check_bound(t.arg(), p, out);
      return;
    case Tag::kArrow:
      check_bound(t.dom(), p, out);
      check_bound(t.cod(), p, out);
      return;
    case Tag::kForall:
      check_bound(t.body(), p, out);
      return;
    case Tag::kAnnot:
      check_bound(t.inner(), p, out);
      return;
    case Tag::kVar:
      return;
  }
}

// Tarjan with an explicit work stack. Returns component ids per vertex.
std::vector<std::size_t> tarjan(const std::vector<std::vector<std::size_t>>& g,
                                std::size_t& count) {
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  const std::size_t n = g.size();
  std::vector<std::size_t> index(n, kUnvisited);
  std::vector<std::size_t> low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> comp(n, kUnvisited);
  std::vector<std::size_t> stack;
  std::size_t counter = 0;
  count = 0;

  struct Frame {
    std::size_t v;
    std::size_t next_edge;
  };
  std::vector<Frame> work;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    work.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!work.empty()) {
      Frame& f = work.back();
      if (f.next_edge < g[f.v].size()) {
        const std::size_t w = g[f.v][f.next_edge++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          work.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      const std::size_t v = f.v;
      work.pop_back();
      if (!work.empty()) {
        low[work.back().v] = std::min(low[work.back().v], low[v]);
      }
      if (low[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = count;
        } while (w != v);
        ++count;
      }
    }
  }
  return comp;
}

}  // namespace

std::set<std::string> dependencies(const DataDecl& d, const Program& p) {
  std::set<std::string> out;
  for (const DataCon& c : d.ctors) {
    for (const SurfaceType& arg : c.args) check_bound(arg, p, out);
  }
  return out;
}

std::vector<Group> group_topo(const Program& p, Grouping grouping) {
  const std::size_t n = p.decls.size();
  std::vector<std::vector<std::size_t>> graph(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const std::string& name : dependencies(p.decls[i], p)) {
      if (grouping == Grouping::kSignaturesBreakCycles &&
          p.sigs.contains(name)) {
        continue;
      }
      graph[i].push_back(*p.index_of(name));
    }
  }

  std::size_t ncomp = 0;
  const std::vector<std::size_t> comp = tarjan(graph, ncomp);

  std::vector<std::vector<std::size_t>> members(ncomp);
  for (std::size_t i = 0; i < n; ++i) members[comp[i]].push_back(i);

  // Condensation: edges from a component to the components it depends on.
  std::vector<std::set<std::size_t>> needs(ncomp);
  std::vector<std::vector<std::size_t>> needed_by(ncomp);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j : graph[i]) {
      if (comp[i] != comp[j] && needs[comp[i]].insert(comp[j]).second) {
        needed_by[comp[j]].push_back(comp[i]);
      }
    }
  }

  // Kahn's algorithm keyed on the smallest member index.
  using Item = std::pair<std::size_t, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> ready;
  std::vector<std::size_t> pending(ncomp);
  for (std::size_t c = 0; c < ncomp; ++c) {
    pending[c] = needs[c].size();
    if (pending[c] == 0) ready.emplace(members[c].front(), c);
  }

  std::vector<Group> out;
  out.reserve(ncomp);
  while (!ready.empty()) {
    const std::size_t c = ready.top().second;
    ready.pop();
    out.push_back(Group{members[c], out.size()});
    for (std::size_t dependent : needed_by[c]) {
      if (--pending[dependent] == 0) {
        ready.emplace(members[dependent].front(), dependent);
      }
    }
  }
  return out;
}

}  // namespace kindred
