#include "padic_ctqw/padic.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ctqw {

namespace {

int read_level_cap() {
    constexpr int kDefault = 20;
    const char* raw = std::getenv("PADIC_CTQW_LEVEL_CAP");
    if (raw == nullptr || *raw == '\0') return kDefault;
    int parsed = 0;
    const char* end = raw + std::string_view(raw).size();
    auto [ptr, ec] = std::from_chars(raw, end, parsed);
    if (ec != std::errc{} || ptr != end) return kDefault;
    return std::clamp(parsed, 0, 30);
}

}  // namespace

int level_cap() {
    static const int cap = read_level_cap();
    return cap;
}

Level::Level(int l) : value_(l) {
    if (l < 0 || l > level_cap()) {
        throw std::invalid_argument("level " + std::to_string(l) +
                                    " outside [0, " + std::to_string(level_cap()) + "]");
    }
}

double Level::ball_measure() const noexcept {
    return std::ldexp(1.0, -value_);
}

BallIndex::BallIndex(std::uint32_t value, Level level) : value_(value), level_(level) {
    if (value >= level.dim()) {
        throw std::invalid_argument("ball index " + std::to_string(value) +
                                    " out of range at level " + std::to_string(level.value()));
    }
}

int valuation2(const BallIndex& a, const BallIndex& b) {
    if (a.level() != b.level()) {
        throw std::invalid_argument("valuation2: ball indices live at different levels");
    }
    const int l = a.level().value();
    const std::uint32_t diff = coarse_parent(a.value() - b.value(), a.level());
    if (diff == 0) return l;
    return std::countr_zero(diff);
}

double ultra_distance(const BallIndex& a, const BallIndex& b) {
    return std::ldexp(1.0, -valuation2(a, b));
}

std::vector<BallIndex> refine_indices(const BallIndex& index, Level r) {
    const Level l = index.level();
    if (r < l) {
        throw std::invalid_argument("refine_indices: target level below the index level");
    }
    const std::uint32_t copies = std::uint32_t{1} << (r.value() - l.value());
    std::vector<BallIndex> out;
    out.reserve(copies);
    for (std::uint32_t c = 0; c < copies; ++c) {
        out.emplace_back(index.value() + (c << l.value()), r);
    }
    return out;
}

SupportSet::SupportSet(Level level, std::vector<std::uint32_t> values)
    : level_(level), values_(std::move(values)) {
    if (values_.empty()) {
        throw std::invalid_argument("support set must not be empty");
    }
    std::sort(values_.begin(), values_.end());
    if (std::adjacent_find(values_.begin(), values_.end()) != values_.end()) {
        throw std::invalid_argument("support set contains duplicate indices");
    }
    if (values_.back() >= level_.dim()) {
        throw std::invalid_argument("support index " + std::to_string(values_.back()) +
                                    " out of range at level " + std::to_string(level_.value()));
    }
}

SupportSet SupportSet::full(Level level) {
    std::vector<std::uint32_t> values(level.dim());
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = static_cast<std::uint32_t>(i);
    return SupportSet(level, std::move(values));
}

BallIndex SupportSet::at(std::size_t pos) const {
    return BallIndex(values_.at(pos), level_);
}

std::optional<std::size_t> SupportSet::position(std::uint32_t value) const noexcept {
    const auto it = std::lower_bound(values_.begin(), values_.end(), value);
    if (it == values_.end() || *it != value) return std::nullopt;
    return static_cast<std::size_t>(it - values_.begin());
}

SupportSet SupportSet::refined(Level r) const {
    if (r < level_) {
        throw std::invalid_argument("SupportSet::refined: target level below current level");
    }
    const std::uint32_t copies = std::uint32_t{1} << (r.value() - level_.value());
    std::vector<std::uint32_t> fine;
    fine.reserve(values_.size() * copies);
    // c-major order keeps the sequence ascending: block c covers
    // [c 2^l, (c+1) 2^l) and members are ascending within each block.
    for (std::uint32_t c = 0; c < copies; ++c) {
        for (const std::uint32_t v : values_) {
            fine.push_back(v + (c << level_.value()));
        }
    }
    return SupportSet(r, std::move(fine));
}

SupportSet SupportSet::coarsened(Level l) const {
    if (level_ < l) {
        throw std::invalid_argument("SupportSet::coarsened: target level above current level");
    }
    std::vector<std::uint32_t> parents;
    parents.reserve(values_.size());
    for (const std::uint32_t v : values_) parents.push_back(coarse_parent(v, l));
    std::sort(parents.begin(), parents.end());
    parents.erase(std::unique(parents.begin(), parents.end()), parents.end());
    return SupportSet(l, std::move(parents));
}

}  // namespace ctqw
