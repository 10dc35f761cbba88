#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "targetum/tptree.hpp"
#include "targetum/types.hpp"

namespace targetum {

// Query-time pruning toggles. s1 (TWU filtering) acts when the tree is
// built and is carried here only for reporting; s2 gates anchors and the
// suffix descent by sumIu + sumRu; s3 aborts the upward match on TWU.
struct StrategySet {
  bool s1 = true;
  bool s2 = true;
  bool s3 = true;
};

struct TargetQuery {
  std::vector<ItemId> items;  // deduplicated, ascending global order
  Money xi = 0;               // target minimum utility
  bool unreachable = false;   // an item is absent from the order: no results
};

// Sorts and deduplicates the raw target. Items the order does not contain
// are kept (after the ordered ones, ascending id) and set the unreachable
// flag. Empty raw target -> UsageError.
TargetQuery normalize_query(std::span<const ItemId> raw, Money xi,
                            const ItemOrder& order);

struct Thui {
  std::vector<ItemId> itemset;  // ascending global order
  Money utility = 0;
};

struct QueryResult {
  std::vector<Thui> thuis;  // depth-first discovery order
  std::uint64_t visited_nodes = 0;
  StrategySet strategies;
};

// Answers one targeted query against the tree, without touching the
// database. Walks the header chain of the target's last (max-TWU) item;
// each chain node is an anchor whose root path is matched upward against
// the remaining targets. visited_nodes counts every node whose fields are
// read; the root sentinel is never counted.
QueryResult run_query(const TPTree& tree, const TargetQuery& q,
                      const StrategySet& flags = {});

struct RawQuery {
  std::vector<ItemId> items;
  Money xi = 0;
};

struct SessionOutcome {
  std::optional<QueryResult> result;  // empty on per-query error
  std::string error;
};

// Runs a batch of queries against one tree. Per-query failures are reported
// in the outcome and do not stop the session. Queries are independent:
// results never depend on session history.
std::vector<SessionOutcome> query_session(const TPTree& tree,
                                          std::span<const RawQuery> queries,
                                          const StrategySet& flags = {});

}  // namespace targetum
