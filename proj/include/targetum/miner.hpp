#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "targetum/dataset.hpp"
#include "targetum/types.hpp"

namespace targetum {

struct UtilityListEntry {
  Tid tid = 0;
  Money iutil = 0;  // utility of the list's itemset in this transaction
  Money rutil = 0;  // remaining utility: items after the itemset, same tid
};

struct UtilityList {
  std::vector<ItemId> itemset;  // in global (ascending TWU) order
  std::vector<UtilityListEntry> entries;  // ascending tid
  Money sum_iu = 0;
  Money sum_ru = 0;

  void add(Tid tid, Money iu, Money ru);
};

// One list per item of rdb.order, in order.
std::vector<UtilityList> build_single_item_lists(const RevisedDatabase& rdb);

// Joins two lists sharing the same prefix (all but the last item). prefix
// is the list of that shared prefix, or nullptr when the inputs are
// single-item lists. px's last item must precede py's in the global order.
UtilityList join_lists(const UtilityList* prefix, const UtilityList& px,
                       const UtilityList& py);

struct MinerOptions {
  bool twu_pruning = true;        // strategy 1; honored by revise_database
  bool remaining_pruning = true;  // strategy 2; gates the DFS extension step
};

struct MiningStats {
  std::uint64_t hui_count = 0;
  std::uint64_t candidate_count = 0;  // utility-lists constructed
  std::uint64_t join_count = 0;
  std::uint64_t db_scans = 0;
  bool twu_pruning = true;
  bool remaining_pruning = true;
};

// One high-utility itemset, reported as parallel per-position arrays: the
// itemset in global order, cumulative utility and remaining utility of each
// prefix, and each item's TWU. Spans point into the miner's DFS stack —
// copy whatever must outlive the callback.
struct HuiEmission {
  std::span<const ItemId> itemset;
  std::span<const Money> ius;
  std::span<const Money> rus;
  std::span<const Money> twus;

  Money utility() const { return ius.back(); }
};

using HuiSink = std::function<void(const HuiEmission&)>;

// Depth-first utility-list mining over the revised database. Emits every
// itemset with utility >= min_util exactly once. twu_pruning is recorded in
// the stats as given; it takes effect when the caller builds rdb.
MiningStats mine(const RevisedDatabase& rdb, Money min_util,
                 const HuiSink& sink, const MinerOptions& opts = {});

}  // namespace targetum
