#pragma once

// Dyadic ball bookkeeping for the unit ball of the 2-adic integers.
//
// At depth l the unit ball splits into 2^l disjoint balls of radius and
// measure 2^-l, one per residue class mod 2^l.  Everything downstream
// (function spaces, operators, walks) works with these residues, so this
// header fixes the conventions once: how residues are compared, how the
// ultrametric distance between two balls is measured, and how a ball is
// subdivided when the partition is refined.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace ctqw {

// Largest admissible partition depth.  Defaults to 20 and can be overridden
// through the PADIC_CTQW_LEVEL_CAP environment variable (read once, clamped
// to [0, 30]).  Dense matrices are 2^l x 2^l, so the cap is a safety rail.
int level_cap();

// Partition depth l >= 0.  Construction enforces 0 <= l <= level_cap().
class Level {
public:
    explicit Level(int l);

    [[nodiscard]] int value() const noexcept { return value_; }

    // Number of depth-l balls, 2^l.
    [[nodiscard]] std::size_t dim() const noexcept { return std::size_t{1} << value_; }

    // Haar measure (= radius) of a single depth-l ball, 2^-l.
    [[nodiscard]] double ball_measure() const noexcept;
    [[nodiscard]] double ball_radius() const noexcept { return ball_measure(); }

    friend bool operator==(Level, Level) noexcept = default;
    friend std::strong_ordering operator<=>(Level, Level) noexcept = default;

private:
    int value_;
};

// Residue I mod 2^l, standing for the ball I + 2^l Z_2.
class BallIndex {
public:
    BallIndex(std::uint32_t value, Level level);

    [[nodiscard]] std::uint32_t value() const noexcept { return value_; }
    [[nodiscard]] Level level() const noexcept { return level_; }

    friend bool operator==(const BallIndex&, const BallIndex&) noexcept = default;

private:
    std::uint32_t value_;
    Level level_;
};

// Parent residue mod 2^l of a finer residue.  Requires l <= the level the
// fine value came from; the caller guarantees that.
[[nodiscard]] inline std::uint32_t coarse_parent(std::uint32_t fine_value, Level l) noexcept;

// 2-adic valuation of the difference of two depth-l residues: the number of
// trailing zero bits of (a - b) mod 2^l, and l when the residues coincide.
// Both arguments must live at the same level.
[[nodiscard]] int valuation2(const BallIndex& a, const BallIndex& b);

// Ultrametric distance 2^-valuation2(a, b) between ball centres.  Two equal
// residues are 2^-l apart, not 0: at depth l the partition cannot separate
// points closer than the ball radius.
[[nodiscard]] double ultra_distance(const BallIndex& a, const BallIndex& b);

// All depth-r residues refining a depth-l ball: index + c * 2^l for
// c = 0 .. 2^(r-l) - 1, returned in ascending residue order.  Requires
// r >= index.level().
[[nodiscard]] std::vector<BallIndex> refine_indices(const BallIndex& index, Level r);

// Finite set of depth-l residues carried as a strictly ascending sequence.
// Constructors reject duplicates and out-of-range values; the empty set is
// not representable.
class SupportSet {
public:
    SupportSet(Level level, std::vector<std::uint32_t> values);

    // The full partition 0 .. 2^l - 1.
    [[nodiscard]] static SupportSet full(Level level);

    [[nodiscard]] Level level() const noexcept { return level_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] const std::vector<std::uint32_t>& values() const noexcept { return values_; }
    [[nodiscard]] bool is_full() const noexcept { return values_.size() == level_.dim(); }

    [[nodiscard]] BallIndex at(std::size_t pos) const;

    // Position of a residue in the ascending sequence, if present.
    [[nodiscard]] std::optional<std::size_t> position(std::uint32_t value) const noexcept;
    [[nodiscard]] bool contains(std::uint32_t value) const noexcept { return position(value).has_value(); }

    // Every depth-r refinement of every member, ascending.  Requires r >= level().
    [[nodiscard]] SupportSet refined(Level r) const;

    // Distinct depth-l parents of the members, ascending.  Requires l <= level().
    [[nodiscard]] SupportSet coarsened(Level l) const;

    friend bool operator==(const SupportSet&, const SupportSet&) noexcept = default;

private:
    Level level_;
    std::vector<std::uint32_t> values_;
};

inline std::uint32_t coarse_parent(std::uint32_t fine_value, Level l) noexcept {
    const std::uint32_t mask = (l.value() >= 32) ? ~std::uint32_t{0}
                                                 : (std::uint32_t{1} << l.value()) - 1u;
    return fine_value & mask;
}

}  // namespace ctqw
