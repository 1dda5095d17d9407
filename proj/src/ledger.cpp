#include "hierstat/ledger.hpp"

#include "hierstat/errors.hpp"

namespace hierstat {

namespace {

Money entry_discrepancy(const LedgerEntry& e) {
  return (e.from_before + e.to_before) - (e.from_after + e.to_after + e.leakage);
}

}  // namespace

TransactionLedger::TransactionLedger(std::map<std::string, Money> opening_balances)
    : opening_(std::move(opening_balances)), running_(opening_) {}

void TransactionLedger::transfer(const std::string& from, const std::string& to, Money amount,
                                 Money leakage) {
  Violations v;
  v.check(from != to, "transfer needs two distinct parties");
  v.check(amount.minor_units >= 0, "amount must be >= 0");
  v.check(leakage.minor_units >= 0 && leakage <= amount, "leakage must lie in [0, amount]");
  v.throw_if_any();

  LedgerEntry e{from, to, amount, leakage, running_[from], running_[to], {}, {}};
  e.from_after = e.from_before - amount;
  e.to_after = e.to_before + amount - leakage;
  running_[from] = e.from_after;
  running_[to] = e.to_after;
  entries_.push_back(std::move(e));
}

void TransactionLedger::append(LedgerEntry entry) {
  running_[entry.from] = entry.from_after;
  running_[entry.to] = entry.to_after;
  entries_.push_back(std::move(entry));
}

BalanceReport ledger_audit(const TransactionLedger& ledger) {
  BalanceReport report;
  report.balances = ledger.opening_balances();
  for (const auto& [name, m] : report.balances) report.opening_total += m;

  const auto& entries = ledger.entries();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    const Money gap = entry_discrepancy(e);
    if (gap.minor_units != 0) throw ImbalancedEntry(i, gap.minor_units);
    // The record must start from the balances the replay has reached.
    const Money drift =
        (report.balances[e.from] - e.from_before) + (report.balances[e.to] - e.to_before);
    if (report.balances[e.from] != e.from_before || report.balances[e.to] != e.to_before) {
      throw ImbalancedEntry(i, drift.minor_units);
    }
    report.balances[e.from] = e.from_after;
    report.balances[e.to] = e.to_after;
    report.sink_total += e.leakage;
  }
  report.entries = entries.size();
  for (const auto& [name, m] : report.balances) report.closing_total += m;
  const Money aggregate = report.opening_total - (report.closing_total + report.sink_total);
  if (aggregate.minor_units != 0) {
    throw ImbalancedEntry(entries.size(), aggregate.minor_units);
  }
  return report;
}

Money subset_discrepancy(const TransactionLedger& ledger, const std::vector<std::size_t>& indices) {
  Money before;
  Money after;
  for (std::size_t i : indices) {
    const auto& e = ledger.entries().at(i);
    before += e.from_before + e.to_before;
    after += e.from_after + e.to_after + e.leakage;
  }
  return before - after;
}

}  // namespace hierstat
