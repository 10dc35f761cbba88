#include "targetum/miner.hpp"

#include <string>

#include "targetum/errors.hpp"

namespace targetum {

void UtilityList::add(Tid tid, Money iu, Money ru) {
  if (!entries.empty() && entries.back().tid >= tid)
    throw UsageError("utility-list entries must be added in ascending tid");
  entries.push_back({tid, iu, ru});
  sum_iu += iu;
  sum_ru += ru;
}

std::vector<UtilityList> build_single_item_lists(const RevisedDatabase& rdb) {
  std::vector<UtilityList> lists(rdb.order.size());
  for (std::size_t r = 0; r < rdb.order.size(); ++r)
    lists[r].itemset = {rdb.order.items[r]};
  for (const auto& t : rdb.transactions) {
    // remaining utility = items after this one in the revised transaction
    Money tail = 0;
    for (const auto& e : t.entries) tail += e.util;
    for (const auto& e : t.entries) {
      tail -= e.util;
      lists[rdb.order.rank(e.item)].add(t.tid, e.util, tail);
    }
  }
  return lists;
}

namespace {

void check_joinable(const UtilityList* prefix, const UtilityList& px,
                    const UtilityList& py) {
  if (px.itemset.empty() || py.itemset.empty() ||
      px.itemset.size() != py.itemset.size())
    throw UsageError("join: itemsets must be non-empty and equally sized");
  for (std::size_t i = 0; i + 1 < px.itemset.size(); ++i)
    if (px.itemset[i] != py.itemset[i])
      throw UsageError("join: itemsets must share all but the last item");
  if (px.itemset.back() == py.itemset.back())
    throw UsageError("join: itemsets must differ in the last item");
  if (prefix == nullptr) {
    if (px.itemset.size() != 1)
      throw UsageError("join: prefix list required beyond single items");
  } else if (prefix->itemset.size() + 1 != px.itemset.size()) {
    throw UsageError("join: prefix length mismatch");
  }
}

}  // namespace

UtilityList join_lists(const UtilityList* prefix, const UtilityList& px,
                       const UtilityList& py) {
  check_joinable(prefix, px, py);
  UtilityList out;
  out.itemset = px.itemset;
  out.itemset.push_back(py.itemset.back());

  // All three entry vectors are tid-sorted and px's tids are a subset of
  // the prefix's, so one forward merge covers everything.
  std::size_t ip = 0;
  auto iy = py.entries.begin();
  for (const auto& ex : px.entries) {
    while (iy != py.entries.end() && iy->tid < ex.tid) ++iy;
    if (iy == py.entries.end()) break;
    if (iy->tid != ex.tid) continue;
    Money iu = ex.iutil + iy->iutil;
    if (prefix) {
      while (ip < prefix->entries.size() && prefix->entries[ip].tid < ex.tid)
        ++ip;
      if (ip >= prefix->entries.size() || prefix->entries[ip].tid != ex.tid)
        throw IntegrityError("join: prefix list is missing tid " +
                             std::to_string(ex.tid));
      iu -= prefix->entries[ip].iutil;
    }
    out.add(ex.tid, iu, iy->rutil);
  }
  return out;
}

namespace {

struct MineCtx {
  const RevisedDatabase& rdb;
  Money min_util;
  const HuiSink& sink;
  const MinerOptions& opts;
  MiningStats& stats;
  std::vector<ItemId> items;
  std::vector<Money> ius, rus, twus;

  void explore(const UtilityList* prefix, std::vector<UtilityList>& lists) {
    for (std::size_t i = 0; i < lists.size(); ++i) {
      const UtilityList& x = lists[i];
      items.push_back(x.itemset.back());
      ius.push_back(x.sum_iu);
      rus.push_back(x.sum_ru);
      twus.push_back(rdb.twu.at(x.itemset.back()));

      if (x.sum_iu >= min_util) {
        ++stats.hui_count;
        sink(HuiEmission{items, ius, rus, twus});
      }
      if (!opts.remaining_pruning || x.sum_iu + x.sum_ru >= min_util) {
        std::vector<UtilityList> exts;
        exts.reserve(lists.size() - i - 1);
        for (std::size_t j = i + 1; j < lists.size(); ++j) {
          ++stats.join_count;
          ++stats.candidate_count;
          exts.push_back(join_lists(prefix, x, lists[j]));
        }
        if (!exts.empty()) explore(&x, exts);
      }

      items.pop_back();
      ius.pop_back();
      rus.pop_back();
      twus.pop_back();
    }
  }
};

}  // namespace

MiningStats mine(const RevisedDatabase& rdb, Money min_util,
                 const HuiSink& sink, const MinerOptions& opts) {
  MiningStats stats;
  stats.twu_pruning = opts.twu_pruning;
  stats.remaining_pruning = opts.remaining_pruning;
  stats.db_scans = 2;  // TWU pass + list-building pass

  std::vector<UtilityList> singles = build_single_item_lists(rdb);
  stats.candidate_count += singles.size();

  MineCtx ctx{rdb, min_util, sink, opts, stats, {}, {}, {}, {}};
  ctx.explore(nullptr, singles);
  return stats;
}

}  // namespace targetum
