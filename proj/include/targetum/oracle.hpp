#pragma once

#include <map>
#include <random>
#include <span>
#include <vector>

#include "targetum/dataset.hpp"
#include "targetum/types.hpp"

namespace targetum {

// Reference implementation by exhaustive enumeration. Deliberately naive
// and independent of the mining/tree/query code paths so it can stand as
// the correctness oracle for all of them.

struct OracleConfig {
  int max_items = 15;         // refuse larger alphabets (2^n enumeration)
  int max_transactions = 32;  // refuse larger databases
};

// Itemsets keyed by their id-sorted item vector, mapped to exact utility.
using ItemsetTable = std::map<std::vector<ItemId>, Money>;

// Utility of X over the raw database: sum of u(i,T) over transactions
// containing all of X.
Money itemset_utility(const QuantDatabase& db, std::span<const ItemId> itemset);

// All itemsets X with u(X) >= sigma, u(X) >= xi and target ⊆ X. An empty
// target imposes no containment constraint.
ItemsetTable brute_force_thuis(const QuantDatabase& db, Money sigma, Money xi,
                               std::span<const ItemId> target,
                               const OracleConfig& cfg = {});

// All high-utility itemsets at sigma.
ItemsetTable brute_force_huis(const QuantDatabase& db, Money sigma,
                              const OracleConfig& cfg = {});

// Filters a mined HUI table down to the targeted answer; the baseline a
// mine-then-filter system would produce.
ItemsetTable post_process_huis(const ItemsetTable& huis,
                               std::span<const ItemId> target, Money xi);

struct GeneratorParams {
  int max_items = 8;
  int max_transactions = 10;
  int max_quantity = 5;        // uniform 1..max
  Money max_unit_utility = 10; // uniform 1..max
  int max_transaction_len = 5; // uniform 1..max distinct items
};

// Small random database for property tests; fully determined by rng state.
QuantDatabase random_database(std::mt19937& rng,
                              const GeneratorParams& params = {});

}  // namespace targetum
