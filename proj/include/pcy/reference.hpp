#pragma once

// Filter-rating and particle-size lookup tables.

#include <array>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "pcy/errors.hpp"

namespace pcy {

struct HepaClass {
    std::string_view label;  // canonical E10 ... U17
    std::string_view alias;  // paired label listed with the same efficiency, may be empty
    double efficiency;
};

struct MervRecord {
    int rating;
    std::string_view dust_efficiency;
    std::string_view particle_size;
    double efficiency_lower_bound;  // fraction; 0 where the table only gives "< 20%"
};

struct PollutantRange {
    std::string_view name;
    double min_microns;
    double max_microns;
};

// Ordered by increasing class. E10/H10 through E12/H12 share one row each.
inline constexpr std::array<HepaClass, 8> kHepaClasses{{
    {"E10", "H10", 0.85},
    {"E11", "H11", 0.95},
    {"E12", "H12", 0.995},
    {"H13", "", 0.9997},
    {"H14", "", 0.99975},
    {"U15", "", 0.999975},
    {"U16", "", 0.9999975},
    {"U17", "", 0.999999},
}};

// Indexed by rating - 1.
inline constexpr std::array<MervRecord, 20> kMervRatings{{
    {1, "< 20%", "≥ 10 microns", 0.0},
    {2, "< 20%", "≥ 10 microns", 0.0},
    {3, "< 20%", "≥ 10 microns", 0.0},
    {4, "< 20%", "≥ 10 microns", 0.0},
    {5, "< 20%", "3 – 10 microns", 0.0},
    {6, "< 20%", "3 – 10 microns", 0.0},
    {7, "25 – 30%", "3 – 10 microns", 0.25},
    {8, "30 – 35%", "3 – 10 microns", 0.30},
    {9, "40 – 45%", "1 – 3 microns", 0.40},
    {10, "50 – 55%", "1 – 3 microns", 0.50},
    {11, "60 – 65%", "1 – 3 microns", 0.60},
    {12, "70 – 75%", "1 – 3 microns", 0.70},
    {13, "89 – 90%", "0.3 – 1 micron", 0.89},
    {14, "90 – 95%", "0.3 – 1 micron", 0.90},
    {15, "≥ 95%", "0.3 – 1 micron", 0.95},
    {16, "≥ 99.95%", "0.3 – 1 micron", 0.9995},
    {17, "≥ 99.97%", "0.3 microns", 0.9997},
    {18, "≥ 99.97%", "0.1 – 0.2 microns", 0.9997},
    {19, "≥ 99.99%", "0.1 – 0.2 microns", 0.9999},
    {20, "≥ 99.999%", "0.1 – 0.2 microns", 0.99999},
}};

inline constexpr std::array<PollutantRange, 21> kPollutants{{
    {"Atmospheric Dust", 0.001, 40},
    {"Bacteria", 0.3, 60},
    {"Beach Sand", 100, 10000},
    {"Burning Wood", 0.2, 3},
    {"Cement Dust", 3, 100},
    {"Clay, fine", 0.5, 1},
    {"Coal Dust", 1, 100},
    {"Combustion", 0.01, 0.1},
    {"Dust Mites", 100, 300},
    {"Fly Ash", 1, 1000},
    {"Grain Dusts", 5, 1000},
    {"Household dust", 0.05, 100},
    {"Human Hair", 40, 300},
    {"Insecticide Dusts", 0.5, 10},
    {"Lead Dust", 0.1, 0.7},
    {"Mold Spores", 10, 30},
    {"Pet Dander", 0.5, 100},
    {"Pollen", 10, 1000},
    {"Smoke", 0.01, 0.1},
    {"Tobacco Smoke", 0.01, 4},
    {"Viruses", 0.005, 0.3},
}};

// Accepts a single label ("H13", "E12", "H12") or a printed pair ("E12/H12").
[[nodiscard]] inline double lookup_hepa_efficiency(std::string_view label) {
    for (const auto& c : kHepaClasses) {
        if (label == c.label || (!c.alias.empty() && label == c.alias)) return c.efficiency;
        if (!c.alias.empty() && label.size() == c.label.size() + 1 + c.alias.size() &&
            label.substr(0, c.label.size()) == c.label && label[c.label.size()] == '/' &&
            label.substr(c.label.size() + 1) == c.alias)
            return c.efficiency;
    }
    throw NotFoundError(std::string(label), "HEPA class");
}

[[nodiscard]] inline const MervRecord& lookup_merv(int rating) {
    if (rating < 1 || rating > static_cast<int>(kMervRatings.size()))
        throw DomainError("MERV rating must be in 1..20, got " + std::to_string(rating));
    return kMervRatings[static_cast<std::size_t>(rating - 1)];
}

// All pollutants whose closed size range contains `size_microns`, in table order.
[[nodiscard]] inline std::vector<std::string_view> classify_particle(double size_microns) {
    if (!(size_microns > 0.0) || !std::isfinite(size_microns))
        throw DomainError("particle size must be a finite value > 0");
    std::vector<std::string_view> out;
    for (const auto& p : kPollutants)
        if (p.min_microns <= size_microns && size_microns <= p.max_microns) out.push_back(p.name);
    return out;
}

}  // namespace pcy
