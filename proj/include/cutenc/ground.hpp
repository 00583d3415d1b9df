#pragma once

#include <boost/container/small_vector.hpp>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cutenc/common.hpp"

namespace cutenc {

/// A subset of a ground set as a fixed-width bit vector. Bit i set <=> element
/// i is in the subset. Width is arbitrary; one inline word covers n <= 64
/// without heap traffic.
class SubsetMask {
public:
    SubsetMask() = default;
    explicit SubsetMask(int width) : width_(width), words_(word_count(width), 0) {}

    static SubsetMask full(int width);
    static SubsetMask of(int width, std::initializer_list<int> elems);
    static SubsetMask from_indices(int width, const std::vector<int>& elems);
    static SubsetMask single(int width, int elem);

    int width() const { return width_; }

    bool test(int i) const { return (words_[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1u; }
    void set(int i) { words_[static_cast<std::size_t>(i) >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(int i) { words_[static_cast<std::size_t>(i) >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

    int count() const;
    bool none() const;
    bool any() const { return !none(); }
    /// Index of the lowest set bit, or -1 when empty.
    int lowest() const;

    SubsetMask& operator|=(const SubsetMask& o);
    SubsetMask& operator&=(const SubsetMask& o);
    SubsetMask& operator^=(const SubsetMask& o);
    /// Set difference, in place.
    SubsetMask& subtract(const SubsetMask& o);

    SubsetMask complement() const;

    bool intersects(const SubsetMask& o) const;
    bool is_subset_of(const SubsetMask& o) const;

    bool operator==(const SubsetMask& o) const { return width_ == o.width_ && words_ == o.words_; }
    bool operator!=(const SubsetMask& o) const { return !(*this == o); }
    /// Numeric order of the underlying bit string (element 0 is the least
    /// significant bit). This is the canonical tie-break order everywhere.
    bool operator<(const SubsetMask& o) const;

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits) {
                int i = static_cast<int>(w * 64) + __builtin_ctzll(bits);
                f(i);
                bits &= bits - 1;
            }
        }
    }

    std::vector<int> elements() const;

    /// Low 64 bits; only meaningful for width <= 64 (dense cache indexing).
    std::uint64_t low_word() const { return words_.empty() ? 0 : words_[0]; }

    const std::uint64_t* words() const { return words_.data(); }
    std::size_t word_size() const { return words_.size(); }

    std::size_t hash() const;

    /// Treat the mask as an integer and add one, wrapping at 2^width.
    /// Returns false on wrap-around to zero. Enumerates all 2^width masks.
    bool increment();

private:
    static std::size_t word_count(int width) {
        return static_cast<std::size_t>((width + 63) / 64);
    }
    void trim();
    void require_same_width(const SubsetMask& o) const;

    int width_ = 0;
    boost::container::small_vector<std::uint64_t, 1> words_;
};

inline SubsetMask operator|(SubsetMask a, const SubsetMask& b) { return a |= b; }
inline SubsetMask operator&(SubsetMask a, const SubsetMask& b) { return a &= b; }
inline SubsetMask operator^(SubsetMask a, const SubsetMask& b) { return a ^= b; }
inline SubsetMask difference(SubsetMask a, const SubsetMask& b) { return a.subtract(b); }

struct SubsetMaskHash {
    std::size_t operator()(const SubsetMask& m) const { return m.hash(); }
};

/// Registry of ground-set elements. Element order is fixed at construction
/// (first appearance in the input) and drives all iteration and rendering.
class GroundSet {
public:
    GroundSet() = default;
    explicit GroundSet(std::vector<std::string> names);

    int size() const { return static_cast<int>(names_.size()); }
    const std::string& name(int i) const { return names_[static_cast<std::size_t>(i)]; }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<int> index_of(std::string_view label) const;

    SubsetMask empty_mask() const { return SubsetMask(size()); }
    SubsetMask full_mask() const { return SubsetMask::full(size()); }

    bool operator==(const GroundSet& o) const { return names_ == o.names_; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, int> index_;
};

/// A pair of disjoint subsets; construction enforces disjointness.
struct DisjointPair {
    SubsetMask s;
    SubsetMask t;

    DisjointPair(SubsetMask s_, SubsetMask t_);
};

/// Parse a comma-separated label list into a mask. Empty text is the empty
/// set. Unknown or duplicate labels are input errors.
SubsetMask subset_parse(const GroundSet& ground, std::string_view text);

/// Canonical rendering: labels sorted by ground index, comma-separated, no
/// spaces. The empty set renders as the empty string.
std::string render_subset(const GroundSet& ground, const SubsetMask& mask);

}  // namespace cutenc
