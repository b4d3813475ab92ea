#pragma once

#include <stdexcept>
#include <string>

namespace pcy {

// Argument outside the mathematical domain of an operation (cadr <= 0, empty
// sample, out-of-range rating, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Lookup of a key that is not present (HEPA class, region, unit id).
class NotFoundError : public std::out_of_range {
public:
    explicit NotFoundError(std::string key, const std::string& what_kind)
        : std::out_of_range(what_kind + " not found: '" + key + "'"), key_(std::move(key)) {}

    [[nodiscard]] const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

}  // namespace pcy
