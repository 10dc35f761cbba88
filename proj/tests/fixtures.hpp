#pragma once

// Shared desk-check fixture: a small retail database whose every
// intermediate value has been worked out by hand, plus conversion helpers
// between engine output and the oracle's canonical itemset tables.

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "targetum/dataset.hpp"
#include "targetum/miner.hpp"
#include "targetum/oracle.hpp"
#include "targetum/query.hpp"
#include "targetum/tptree.hpp"

namespace fixtures {

using namespace targetum;

// readable ids for the desk database
inline constexpr ItemId A = 1, B = 2, C = 3, D = 4, E = 5, F = 6, G = 7, H = 8;

inline QuantDatabase desk_db() {
  QuantDatabase db;
  db.utilities.set(A, 3);
  db.utilities.set(B, 2);
  db.utilities.set(C, 1);
  db.utilities.set(D, 5);
  db.utilities.set(E, 4);
  db.utilities.set(F, 2);
  db.utilities.set(G, 2);
  db.utilities.set(H, 1);
  auto add = [&](std::vector<std::pair<ItemId, std::int64_t>> entries) {
    Transaction t;
    t.tid = static_cast<Tid>(db.transactions.size() + 1);
    for (auto [item, qty] : entries) t.entries.push_back({item, qty});
    db.transactions.push_back(std::move(t));
  };
  add({{B, 1}, {C, 2}, {E, 2}, {G, 1}, {H, 1}});  // tu 15
  add({{A, 2}, {C, 1}, {F, 2}, {G, 4}});          // tu 19
  add({{B, 5}, {C, 2}, {E, 3}, {H, 4}});          // tu 28
  add({{A, 2}, {C, 1}, {D, 3}, {E, 1}, {G, 2}});  // tu 30
  add({{C, 3}, {E, 4}});                          // tu 19
  add({{G, 1}, {H, 1}});                          // tu 3
  return db;
}

// The same database in file form: per-item utility contributions.
inline std::string desk_text() {
  return
      "2 3 5 7 8:15:2 2 8 2 1\n"
      "1 3 6 7:19:6 1 4 8\n"
      "2 3 5 8:28:10 2 12 4\n"
      "1 3 4 5 7:30:6 1 15 4 4\n"
      "3 5:19:3 16\n"
      "7 8:3:2 1\n";
}

struct Built {
  RevisedDatabase rdb;
  TPTree tree;
  MiningStats stats;
};

inline Built build_at(const QuantDatabase& db, Money sigma,
                      const MinerOptions& opts = {}) {
  RevisedDatabase rdb = revise_database(db, sigma, opts.twu_pruning);
  TreeBuild tb = build_tree(rdb, sigma, opts);
  return {std::move(rdb), std::move(tb.tree), tb.stats};
}

// Engine itemsets are in global order; the oracle keys by ascending id.
inline ItemsetTable canon(const std::vector<Thui>& thuis) {
  ItemsetTable out;
  for (const auto& t : thuis) {
    std::vector<ItemId> ids = t.itemset;
    std::sort(ids.begin(), ids.end());
    out.emplace(std::move(ids), t.utility);
  }
  return out;
}

struct MinedItemset {
  std::vector<ItemId> items;  // global order, as emitted
  std::vector<Money> ius;
  std::vector<Money> rus;
  std::vector<Money> twus;
};

// Collects every emission (discovery order) without building a tree.
inline std::vector<MinedItemset> mine_all(const RevisedDatabase& rdb,
                                          Money sigma,
                                          const MinerOptions& opts = {}) {
  std::vector<MinedItemset> out;
  mine(
      rdb, sigma,
      [&](const HuiEmission& h) {
        out.push_back({{h.itemset.begin(), h.itemset.end()},
                       {h.ius.begin(), h.ius.end()},
                       {h.rus.begin(), h.rus.end()},
                       {h.twus.begin(), h.twus.end()}});
      },
      opts);
  return out;
}

inline ItemsetTable canon_mined(const std::vector<MinedItemset>& mined) {
  ItemsetTable out;
  for (const auto& m : mined) {
    std::vector<ItemId> ids = m.items;
    std::sort(ids.begin(), ids.end());
    out.emplace(std::move(ids), m.ius.back());
  }
  return out;
}

}  // namespace fixtures
