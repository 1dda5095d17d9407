#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace hierstat {

/// Fixed-point currency amount in minor units (e.g. cents).
struct Money {
  std::int64_t minor_units = 0;

  friend Money operator+(Money a, Money b) { return {a.minor_units + b.minor_units}; }
  friend Money operator-(Money a, Money b) { return {a.minor_units - b.minor_units}; }
  Money& operator+=(Money o) {
    minor_units += o.minor_units;
    return *this;
  }
  friend auto operator<=>(const Money&, const Money&) = default;
};

/// One bilateral transaction. `leakage` is what went to third parties
/// (taxes, fees, losses); conservation requires
///   from_before + to_before == from_after + to_after + leakage.
struct LedgerEntry {
  std::string from;
  std::string to;
  Money amount;
  Money leakage;
  Money from_before;
  Money to_before;
  Money from_after;
  Money to_after;
};

class TransactionLedger {
 public:
  explicit TransactionLedger(std::map<std::string, Money> opening_balances);

  /// `from` pays `amount`; `to` receives amount - leakage, the rest goes
  /// to the third-party sink. Balances are taken from the running totals.
  void transfer(const std::string& from, const std::string& to, Money amount,
                Money leakage = {});

  /// Append a pre-built record as-is (e.g. imported data); not checked here.
  void append(LedgerEntry entry);

  const std::map<std::string, Money>& opening_balances() const noexcept { return opening_; }
  const std::vector<LedgerEntry>& entries() const noexcept { return entries_; }

 private:
  std::map<std::string, Money> opening_;
  std::map<std::string, Money> running_;
  std::vector<LedgerEntry> entries_;
};

struct BalanceReport {
  std::size_t entries = 0;
  Money opening_total;
  Money closing_total;  // sum over parties, excluding the sink
  Money sink_total;     // accumulated leakage
  std::map<std::string, Money> balances;
};

/// Replays the ledger from the opening balances and checks every entry for
/// exact conservation and continuity with the running balances. Throws
/// ImbalancedEntry naming the first violating record.
BalanceReport ledger_audit(const TransactionLedger& ledger);

/// System-level balance over an arbitrary subset of entries: the money held
/// by the participants before equals what they hold after plus the leakage.
/// Returns the discrepancy (zero when balanced).
Money subset_discrepancy(const TransactionLedger& ledger, const std::vector<std::size_t>& indices);

}  // namespace hierstat
