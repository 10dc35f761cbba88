#include "targetum/query.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "targetum/errors.hpp"

namespace targetum {

TargetQuery normalize_query(std::span<const ItemId> raw, Money xi,
                            const ItemOrder& order) {
  if (raw.empty())
    throw UsageError("target itemset must contain at least one item");
  std::set<ItemId> uniq(raw.begin(), raw.end());

  TargetQuery q;
  q.xi = xi;
  std::vector<ItemId> absent;
  for (ItemId item : uniq)
    (order.contains(item) ? q.items : absent).push_back(item);
  std::sort(q.items.begin(), q.items.end(), [&](ItemId a, ItemId b) {
    return order.rank(a) < order.rank(b);
  });
  // absent items cannot match anything; keep them visible behind the flag
  q.unreachable = !absent.empty();
  q.items.insert(q.items.end(), absent.begin(), absent.end());
  return q;
}

namespace {

struct QueryCtx {
  const TargetQuery& q;
  const StrategySet& flags;
  QueryResult& res;

  void suffix_walk(const TPNode* node, std::vector<ItemId>& itemset) {
    for (const auto& child : node->children) {
      ++res.visited_nodes;
      itemset.push_back(child->name);
      if (child->is_end && child->sum_iu >= q.xi)
        res.thuis.push_back({itemset, child->sum_iu});
      if (!child->children.empty() &&
          (!flags.s2 || child->sum_iu + child->sum_ru >= q.xi))
        suffix_walk(child.get(), itemset);
      itemset.pop_back();
    }
  }
};

}  // namespace

QueryResult run_query(const TPTree& tree, const TargetQuery& q,
                      const StrategySet& flags) {
  QueryResult res;
  res.strategies = flags;
  if (q.items.empty())
    throw UsageError("target itemset must contain at least one item");
  if (q.unreachable) return res;

  std::vector<Money> target_twus(q.items.size());
  int prev_rank = -1;
  for (std::size_t k = 0; k < q.items.size(); ++k) {
    if (!tree.order().contains(q.items[k]))
      throw UsageError("query was not normalized for this tree (item " +
                       std::to_string(q.items[k]) + " unknown)");
    int rank = tree.order().rank(q.items[k]);
    if (rank <= prev_rank)
      throw UsageError("query was not normalized for this tree (order)");
    prev_rank = rank;
    target_twus[k] = tree.twu_of(q.items[k]);
  }

  QueryCtx ctx{q, flags, res};
  const TPNode* root = &tree.root();
  std::vector<ItemId> path;  // anchor first, then each climbed ancestor

  for (const TPNode* anchor = tree.head_of(q.items.back()); anchor;
       anchor = anchor->link) {
    ++res.visited_nodes;
    if (flags.s2 && anchor->sum_iu + anchor->sum_ru < q.xi) continue;

    // match the remaining targets bottom-up along the root path
    int pos = static_cast<int>(q.items.size()) - 2;
    bool aborted = false;
    path.clear();
    path.push_back(anchor->name);
    for (const TPNode* cur = anchor->parent; cur != root; cur = cur->parent) {
      ++res.visited_nodes;
      if (pos >= 0) {
        // ancestors carry TWU >= the anchor path's; once below the next
        // target's TWU nothing further up can match it
        if (flags.s3 && cur->twu < target_twus[pos]) {
          aborted = true;
          break;
        }
        if (cur->name == q.items[pos]) --pos;
      }
      path.push_back(cur->name);
    }
    if (aborted || pos >= 0) continue;

    std::vector<ItemId> itemset(path.rbegin(), path.rend());
    if (anchor->is_end && anchor->sum_iu >= q.xi)
      res.thuis.push_back({itemset, anchor->sum_iu});
    ctx.suffix_walk(anchor, itemset);
  }
  return res;
}

std::vector<SessionOutcome> query_session(const TPTree& tree,
                                          std::span<const RawQuery> queries,
                                          const StrategySet& flags) {
  std::vector<SessionOutcome> out;
  out.reserve(queries.size());
  for (const auto& raw : queries) {
    SessionOutcome o;
    try {
      TargetQuery q = normalize_query(raw.items, raw.xi, tree.order());
      o.result = run_query(tree, q, flags);
    } catch (const UsageError& e) {
      o.error = e.what();
    }
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace targetum
