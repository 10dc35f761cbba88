#pragma once

#include <iosfwd>
#include <map>
#include <memory>
#include <span>
#include <vector>

#include "targetum/dataset.hpp"
#include "targetum/miner.hpp"
#include "targetum/types.hpp"

namespace targetum {

struct TPNode {
  ItemId name = -1;
  Money twu = 0;
  Money sum_iu = 0;  // utility of the root path ending here
  Money sum_ru = 0;  // remaining utility of that path
  bool is_end = false;  // root path is a complete high-utility itemset
  TPNode* parent = nullptr;  // nullptr only on the root sentinel
  TPNode* link = nullptr;    // next node with the same name, insertion order
  std::vector<std::unique_ptr<TPNode>> children;  // ascending order rank
};

struct HeaderTable {
  std::map<ItemId, TPNode*> head;
  std::map<ItemId, TPNode*> tail;
};

// Appends node to the chain for item, preserving insertion order.
void header_append(HeaderTable& header, ItemId item, TPNode* node);

// Prefix-shared trie over the mined itemsets. Node addresses are stable for
// the tree's lifetime; the tree is immutable once built and safe for
// concurrent read-only queries.
class TPTree {
 public:
  TPTree(ItemOrder order, Money min_util, std::map<ItemId, Money> twu);

  TPTree(const TPTree&) = delete;
  TPTree& operator=(const TPTree&) = delete;
  TPTree(TPTree&&) = default;
  TPTree& operator=(TPTree&&) = default;

  // Inserts one itemset with its per-position values (see HuiEmission).
  // Existing nodes must carry identical values: a mismatch means the inputs
  // do not describe the same database and raises IntegrityError.
  void insert_hui(std::span<const ItemId> itemset, std::span<const Money> ius,
                  std::span<const Money> rus, std::span<const Money> twus);

  const TPNode& root() const { return *root_; }
  const TPNode* head_of(ItemId item) const;
  const HeaderTable& header() const { return header_; }
  const ItemOrder& order() const { return order_; }
  const std::map<ItemId, Money>& twu() const { return twu_; }
  Money twu_of(ItemId item) const;
  Money min_util() const { return min_util_; }
  std::size_t node_count() const { return node_count_; }  // excludes root

 private:
  std::unique_ptr<TPNode> root_;
  HeaderTable header_;
  ItemOrder order_;
  std::map<ItemId, Money> twu_;
  Money min_util_ = 0;
  std::size_t node_count_ = 0;
};

struct TreeBuild {
  TPTree tree;
  MiningStats stats;
};

// Mines rdb at min_util and inserts every emitted itemset into a fresh tree.
TreeBuild build_tree(const RevisedDatabase& rdb, Money min_util,
                     const MinerOptions& opts = {});

// One node per line, pre-order: "depth item twu sumIu sumRu isEnd".
// Depth 0 is a child of the root; the root itself is not printed.
void dump_tree(const TPTree& tree, std::ostream& out);

}  // namespace targetum
