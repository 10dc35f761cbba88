#include "targetum/oracle.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "targetum/errors.hpp"

namespace targetum {

Money itemset_utility(const QuantDatabase& db,
                      std::span<const ItemId> itemset) {
  Money total = 0;
  for (const auto& t : db.transactions) {
    Money in_t = 0;
    std::size_t found = 0;
    for (const auto& e : t.entries) {
      for (ItemId x : itemset) {
        if (e.item == x) {
          in_t += db.utilities.at(e.item) * e.quantity;
          ++found;
          break;
        }
      }
    }
    if (found == itemset.size()) total += in_t;
  }
  return total;
}

namespace {

std::vector<ItemId> distinct_items(const QuantDatabase& db) {
  std::set<ItemId> s;
  for (const auto& t : db.transactions)
    for (const auto& e : t.entries) s.insert(e.item);
  return {s.begin(), s.end()};
}

void check_caps(const QuantDatabase& db, const std::vector<ItemId>& items,
                const OracleConfig& cfg) {
  if (static_cast<int>(items.size()) > cfg.max_items)
    throw UsageError("oracle: " + std::to_string(items.size()) +
                     " distinct items exceeds the cap of " +
                     std::to_string(cfg.max_items));
  if (static_cast<int>(db.transactions.size()) > cfg.max_transactions)
    throw UsageError("oracle: " + std::to_string(db.transactions.size()) +
                     " transactions exceeds the cap of " +
                     std::to_string(cfg.max_transactions));
}

}  // namespace

ItemsetTable brute_force_thuis(const QuantDatabase& db, Money sigma, Money xi,
                               std::span<const ItemId> target,
                               const OracleConfig& cfg) {
  std::vector<ItemId> items = distinct_items(db);
  check_caps(db, items, cfg);

  ItemsetTable out;
  const std::uint32_t n = static_cast<std::uint32_t>(items.size());
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<ItemId> x;
    for (std::uint32_t b = 0; b < n; ++b)
      if (mask & (std::uint64_t{1} << b)) x.push_back(items[b]);

    bool covers = true;
    for (ItemId want : target)
      if (std::find(x.begin(), x.end(), want) == x.end()) {
        covers = false;
        break;
      }
    if (!covers) continue;

    Money u = itemset_utility(db, x);
    if (u >= sigma && u >= xi) out.emplace(std::move(x), u);
  }
  return out;
}

ItemsetTable brute_force_huis(const QuantDatabase& db, Money sigma,
                              const OracleConfig& cfg) {
  return brute_force_thuis(db, sigma, sigma, {}, cfg);
}

ItemsetTable post_process_huis(const ItemsetTable& huis,
                               std::span<const ItemId> target, Money xi) {
  ItemsetTable out;
  for (const auto& [itemset, utility] : huis) {
    if (utility < xi) continue;
    bool covers = true;
    for (ItemId want : target)
      if (!std::binary_search(itemset.begin(), itemset.end(), want)) {
        covers = false;
        break;
      }
    if (covers) out.emplace(itemset, utility);
  }
  return out;
}

QuantDatabase random_database(std::mt19937& rng,
                              const GeneratorParams& params) {
  QuantDatabase db;
  std::uniform_int_distribution<int> n_items(2, params.max_items);
  const int alphabet = n_items(rng);
  std::uniform_int_distribution<Money> unit(1, params.max_unit_utility);
  for (int i = 1; i <= alphabet; ++i) db.utilities.set(i, unit(rng));

  std::uniform_int_distribution<int> n_trans(1, params.max_transactions);
  std::uniform_int_distribution<int> t_len(
      1, std::min(params.max_transaction_len, alphabet));
  std::uniform_int_distribution<std::int64_t> qty(1, params.max_quantity);
  const int m = n_trans(rng);
  for (int k = 1; k <= m; ++k) {
    std::vector<ItemId> pool(alphabet);
    for (int i = 0; i < alphabet; ++i) pool[i] = i + 1;
    std::shuffle(pool.begin(), pool.end(), rng);
    Transaction t;
    t.tid = k;
    const int len = t_len(rng);
    for (int i = 0; i < len; ++i) t.entries.push_back({pool[i], qty(rng)});
    std::sort(t.entries.begin(), t.entries.end(),
              [](const TransactionEntry& a, const TransactionEntry& b) {
                return a.item < b.item;
              });
    db.transactions.push_back(std::move(t));
  }
  return db;
}

}  // namespace targetum
