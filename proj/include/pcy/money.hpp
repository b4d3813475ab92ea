#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <string>

namespace pcy {

// Round to whole cents, half away from zero. The value is first snapped to
// micro-dollars so that binary noise such as 1155.764999999 does not decide
// the half-cent case.
[[nodiscard]] inline std::int64_t to_cents(double usd) {
    const auto micros = static_cast<std::int64_t>(std::llround(usd * 1e6));
    const std::int64_t mag = std::llabs(micros);
    const std::int64_t cents = (mag + 5000) / 10000;
    return micros < 0 ? -cents : cents;
}

[[nodiscard]] inline double round_cents(double usd) {
    return static_cast<double>(to_cents(usd)) / 100.0;
}

// "1155.77", "-0.50", "0.00". Money always leaves the process as text with
// exactly two decimals.
[[nodiscard]] inline std::string format_usd(double usd) {
    const std::int64_t cents = to_cents(usd);
    const std::int64_t mag = std::llabs(cents);
    std::string out = std::to_string(mag / 100);
    out += '.';
    const auto frac = mag % 100;
    if (frac < 10) out += '0';
    out += std::to_string(frac);
    if (cents < 0) out.insert(out.begin(), '-');
    return out;
}

}  // namespace pcy
