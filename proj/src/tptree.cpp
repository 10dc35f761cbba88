#include "targetum/tptree.hpp"

#include <algorithm>
#include <ostream>
#include <string>

#include "targetum/errors.hpp"

namespace targetum {

void header_append(HeaderTable& header, ItemId item, TPNode* node) {
  auto it = header.tail.find(item);
  if (it == header.tail.end()) {
    header.head[item] = node;
    header.tail[item] = node;
  } else {
    it->second->link = node;
    it->second = node;
  }
}

TPTree::TPTree(ItemOrder order, Money min_util, std::map<ItemId, Money> twu)
    : root_(std::make_unique<TPNode>()),
      order_(std::move(order)),
      twu_(std::move(twu)),
      min_util_(min_util) {}

const TPNode* TPTree::head_of(ItemId item) const {
  auto it = header_.head.find(item);
  return it == header_.head.end() ? nullptr : it->second;
}

Money TPTree::twu_of(ItemId item) const {
  auto it = twu_.find(item);
  if (it == twu_.end())
    throw LookupError("no TWU recorded for item " + std::to_string(item));
  return it->second;
}

void TPTree::insert_hui(std::span<const ItemId> itemset,
                        std::span<const Money> ius,
                        std::span<const Money> rus,
                        std::span<const Money> twus) {
  if (itemset.empty()) throw UsageError("insert_hui: empty itemset");
  if (ius.size() != itemset.size() || rus.size() != itemset.size() ||
      twus.size() != itemset.size())
    throw UsageError("insert_hui: value arrays must match the itemset");

  TPNode* node = root_.get();
  int prev_rank = -1;
  for (std::size_t k = 0; k < itemset.size(); ++k) {
    int rank = order_.rank(itemset[k]);
    if (rank <= prev_rank)
      throw UsageError("insert_hui: itemset not in ascending global order");
    prev_rank = rank;

    // children stay sorted by rank, so membership is a binary search
    auto pos = std::lower_bound(
        node->children.begin(), node->children.end(), rank,
        [&](const std::unique_ptr<TPNode>& c, int r) {
          return order_.rank(c->name) < r;
        });
    if (pos != node->children.end() && (*pos)->name == itemset[k]) {
      TPNode* hit = pos->get();
      if (hit->twu != twus[k] || hit->sum_iu != ius[k] || hit->sum_ru != rus[k])
        throw IntegrityError(
            "insert_hui: node for item " + std::to_string(itemset[k]) +
            " already holds different values (twu " + std::to_string(hit->twu) +
            " sumIu " + std::to_string(hit->sum_iu) + " sumRu " +
            std::to_string(hit->sum_ru) + ")");
      node = hit;
    } else {
      auto fresh = std::make_unique<TPNode>();
      fresh->name = itemset[k];
      fresh->twu = twus[k];
      fresh->sum_iu = ius[k];
      fresh->sum_ru = rus[k];
      fresh->parent = node;
      TPNode* raw = fresh.get();
      node->children.insert(pos, std::move(fresh));
      header_append(header_, itemset[k], raw);
      ++node_count_;
      node = raw;
    }
  }
  node->is_end = true;
}

TreeBuild build_tree(const RevisedDatabase& rdb, Money min_util,
                     const MinerOptions& opts) {
  TPTree tree(rdb.order, min_util, rdb.twu);
  MiningStats stats = mine(
      rdb, min_util,
      [&tree](const HuiEmission& h) {
        tree.insert_hui(h.itemset, h.ius, h.rus, h.twus);
      },
      opts);
  return {std::move(tree), stats};
}

namespace {

void dump_node(const TPNode& node, int depth, std::ostream& out) {
  out << depth << ' ' << node.name << ' ' << node.twu << ' ' << node.sum_iu
      << ' ' << node.sum_ru << ' ' << (node.is_end ? 1 : 0) << '\n';
  for (const auto& child : node.children) dump_node(*child, depth + 1, out);
}

}  // namespace

void dump_tree(const TPTree& tree, std::ostream& out) {
  for (const auto& child : tree.root().children) dump_node(*child, 0, out);
}

}  // namespace targetum
