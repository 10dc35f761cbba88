#include "targetum/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>

namespace targetum {

Money ExternalUtilityTable::at(ItemId item) const {
  auto it = unit.find(item);
  if (it == unit.end())
    throw LookupError("no unit utility for item " + std::to_string(item));
  return it->second;
}

int ItemOrder::rank(ItemId item) const {
  auto it = rank_of.find(item);
  if (it == rank_of.end())
    throw LookupError("item " + std::to_string(item) + " is not in the order");
  return it->second;
}

namespace {

bool is_comment(std::string_view line) {
  return !line.empty() && (line[0] == '#' || line[0] == '%' || line[0] == '@');
}

std::int64_t parse_int(std::string_view tok, std::size_t lineno,
                       const char* what) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError("line " + std::to_string(lineno) + ": bad " + what +
                     " '" + std::string(tok) + "'");
  if (value < 0)
    throw ParseError("line " + std::to_string(lineno) + ": negative " + what);
  return value;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

QuantDatabase parse_database(std::istream& in, const ParseOptions& opts) {
  QuantDatabase db;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view sv(line);
    if (sv.empty() || is_comment(sv)) continue;

    auto c1 = sv.find(':');
    auto c2 = c1 == std::string_view::npos ? c1 : sv.find(':', c1 + 1);
    if (c2 == std::string_view::npos || sv.find(':', c2 + 1) != std::string_view::npos)
      throw ParseError("line " + std::to_string(lineno) +
                       ": expected <items>:<utility>:<item utilities>");

    auto items = split_ws(sv.substr(0, c1));
    auto tu_field = sv.substr(c1 + 1, c2 - c1 - 1);
    auto utils = split_ws(sv.substr(c2 + 1));
    if (items.empty())
      throw ParseError("line " + std::to_string(lineno) + ": no items");
    if (items.size() != utils.size())
      throw ParseError("line " + std::to_string(lineno) + ": " +
                       std::to_string(items.size()) + " items but " +
                       std::to_string(utils.size()) + " utility values");

    Transaction t;
    t.tid = static_cast<Tid>(db.transactions.size() + 1);
    Money sum = 0;
    for (std::size_t k = 0; k < items.size(); ++k) {
      auto item = static_cast<ItemId>(parse_int(items[k], lineno, "item id"));
      Money util = parse_int(utils[k], lineno, "utility");
      for (const auto& e : t.entries)
        if (e.item == item)
          throw ParseError("line " + std::to_string(lineno) +
                           ": duplicate item " + std::to_string(item));
      // File utilities are the contributions u(i,T); model them as
      // quantity x unit utility 1 so nothing downstream needs a special case.
      t.entries.push_back({item, util});
      db.utilities.set(item, 1);
      sum += util;
    }
    Money declared = parse_int(tu_field, lineno, "transaction utility");
    if (opts.strict && declared != sum)
      throw ParseError("line " + std::to_string(lineno) +
                       ": declared utility " + std::to_string(declared) +
                       " != sum of item utilities " + std::to_string(sum));
    db.transactions.push_back(std::move(t));
  }
  if (db.transactions.empty()) throw ParseError("no transactions in input");
  return db;
}

QuantDatabase parse_database_file(const std::filesystem::path& path,
                                  const ParseOptions& opts) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return parse_database(in, opts);
}

Money transaction_utility(const Transaction& t,
                          const ExternalUtilityTable& eu) {
  Money sum = 0;
  for (const auto& e : t.entries) sum += eu.at(e.item) * e.quantity;
  return sum;
}

std::map<ItemId, Money> compute_twu(const QuantDatabase& db) {
  std::map<ItemId, Money> twu;
  for (const auto& t : db.transactions) {
    Money tu = transaction_utility(t, db.utilities);
    for (const auto& e : t.entries) twu[e.item] += tu;
  }
  return twu;
}

RevisedDatabase revise_database(const QuantDatabase& db, Money min_util,
                                bool twu_filter) {
  RevisedDatabase rdb;
  rdb.twu = compute_twu(db);

  std::vector<ItemId> keep;
  for (const auto& [item, twu] : rdb.twu)
    if (!twu_filter || twu >= min_util) keep.push_back(item);
  std::sort(keep.begin(), keep.end(), [&](ItemId a, ItemId b) {
    Money ta = rdb.twu.at(a), tb = rdb.twu.at(b);
    return ta != tb ? ta < tb : a < b;
  });
  rdb.order.items = keep;
  for (std::size_t r = 0; r < keep.size(); ++r)
    rdb.order.rank_of[keep[r]] = static_cast<int>(r);

  for (const auto& t : db.transactions) {
    RevisedTransaction rt;
    rt.tid = t.tid;
    rt.tu = transaction_utility(t, db.utilities);
    for (const auto& e : t.entries)
      if (rdb.order.contains(e.item))
        rt.entries.push_back({e.item, db.utilities.at(e.item) * e.quantity});
    if (rt.entries.empty()) continue;
    std::sort(rt.entries.begin(), rt.entries.end(),
              [&](const RevisedEntry& a, const RevisedEntry& b) {
                return rdb.order.rank(a.item) < rdb.order.rank(b.item);
              });
    rdb.transactions.push_back(std::move(rt));
  }
  return rdb;
}

}  // namespace targetum
