#pragma once

// Output records for the CLI: exact fractions plus 12-significant-digit
// decimal renderings, as CSV rows or JSON objects.

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "symrank/arith.hpp"
#include "symrank/prob.hpp"

namespace symrank {

/// Fixed-point rendering with `significant` significant digits, rounding half
/// to even on the exact value.
std::string to_decimal(const Rational& value, int significant = 12);

struct OutputRecord {
    long n = 0;
    std::optional<std::uint64_t> p;  // set only for prime-power m
    std::optional<long> mu;
    std::uint64_t m = 0;
    Rational P;
    Rational Q;
    Route route = Route::explicit_form;
};

OutputRecord make_record(long n, std::uint64_t m, Route route = Route::explicit_form);

inline constexpr const char* kCsvHeader = "n,p,mu,m,P_num,P_den,Q_num,Q_den,P_dec,Q_dec";

std::string to_csv_row(const OutputRecord& record);

/// Inverse of to_csv_row; decimal columns are ignored.
OutputRecord parse_csv_row(const std::string& line);

/// m, numerators and denominators are strings so consumers never overflow.
nlohmann::json to_json(const OutputRecord& record);

}  // namespace symrank
