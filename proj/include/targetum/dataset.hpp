#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <unordered_map>
#include <vector>

#include "targetum/errors.hpp"
#include "targetum/types.hpp"

namespace targetum {

// Unit (external) utility per item. Every item that appears in any
// transaction must have an entry.
struct ExternalUtilityTable {
  std::unordered_map<ItemId, Money> unit;

  Money at(ItemId item) const;
  void set(ItemId item, Money value) { unit[item] = value; }
};

struct TransactionEntry {
  ItemId item = 0;
  std::int64_t quantity = 0;  // internal (purchase) quantity
};

struct Transaction {
  Tid tid = 0;
  std::vector<TransactionEntry> entries;  // items unique within a transaction
};

struct QuantDatabase {
  std::vector<Transaction> transactions;
  ExternalUtilityTable utilities;
};

struct ParseOptions {
  bool strict = true;  // require the declared transaction utility to match
};

// Reads the common quantitative transaction format:
//   <items space-separated>:<transaction utility>:<per-item utilities>
// one transaction per line. Lines starting with '#', '%' or '@' and blank
// lines are skipped. Utilities in the file are the per-item utility
// contributions u(i,T); they are stored as quantities with unit utility 1,
// which is observationally identical downstream.
QuantDatabase parse_database(std::istream& in, const ParseOptions& opts = {});
QuantDatabase parse_database_file(const std::filesystem::path& path,
                                  const ParseOptions& opts = {});

// u(i,T) summed over the transaction; LookupError if an item has no unit
// utility entry.
Money transaction_utility(const Transaction& t, const ExternalUtilityTable& eu);

// TWU(i) = sum of tu(T) over transactions containing i.
std::map<ItemId, Money> compute_twu(const QuantDatabase& db);

// Total order over items: ascending TWU, id as tie-break.
struct ItemOrder {
  std::vector<ItemId> items;             // rank -> item
  std::unordered_map<ItemId, int> rank_of;  // item -> rank

  bool contains(ItemId item) const { return rank_of.count(item) != 0; }
  int rank(ItemId item) const;
  std::size_t size() const { return items.size(); }
};

struct RevisedEntry {
  ItemId item = 0;
  Money util = 0;  // u(i,T)
};

struct RevisedTransaction {
  Tid tid = 0;
  Money tu = 0;  // utility of the *original* transaction, kept for TWU
  std::vector<RevisedEntry> entries;  // sorted by global order rank
};

struct RevisedDatabase {
  std::vector<RevisedTransaction> transactions;  // empty ones dropped
  ItemOrder order;                // surviving items only
  std::map<ItemId, Money> twu;    // every item seen in the raw database
};

// Removes unpromising items (TWU < min_util) and rewrites each transaction
// in ascending-TWU order. Pass twu_filter=false to keep all items (the
// order is still built); used to switch the TWU pruning strategy off.
RevisedDatabase revise_database(const QuantDatabase& db, Money min_util,
                                bool twu_filter = true);

}  // namespace targetum
