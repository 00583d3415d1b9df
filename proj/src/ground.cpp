#include "cutenc/ground.hpp"

#include <algorithm>
#include <bit>

namespace cutenc {

SubsetMask SubsetMask::full(int width) {
    SubsetMask m(width);
    for (auto& w : m.words_) w = ~std::uint64_t{0};
    m.trim();
    return m;
}

SubsetMask SubsetMask::of(int width, std::initializer_list<int> elems) {
    SubsetMask m(width);
    for (int e : elems) m.set(e);
    return m;
}

SubsetMask SubsetMask::from_indices(int width, const std::vector<int>& elems) {
    SubsetMask m(width);
    for (int e : elems) m.set(e);
    return m;
}

SubsetMask SubsetMask::single(int width, int elem) {
    SubsetMask m(width);
    m.set(elem);
    return m;
}

int SubsetMask::count() const {
    int c = 0;
    for (std::uint64_t w : words_) c += std::popcount(w);
    return c;
}

bool SubsetMask::none() const {
    for (std::uint64_t w : words_)
        if (w) return false;
    return true;
}

int SubsetMask::lowest() const {
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i]) return static_cast<int>(i * 64) + __builtin_ctzll(words_[i]);
    return -1;
}

void SubsetMask::require_same_width(const SubsetMask& o) const {
    if (width_ != o.width_)
        throw ContractError("subset mask width mismatch: " + std::to_string(width_) + " vs " +
                            std::to_string(o.width_));
}

SubsetMask& SubsetMask::operator|=(const SubsetMask& o) {
    require_same_width(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
}

SubsetMask& SubsetMask::operator&=(const SubsetMask& o) {
    require_same_width(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
}

SubsetMask& SubsetMask::operator^=(const SubsetMask& o) {
    require_same_width(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
}

SubsetMask& SubsetMask::subtract(const SubsetMask& o) {
    require_same_width(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
}

SubsetMask SubsetMask::complement() const {
    SubsetMask m(width_);
    for (std::size_t i = 0; i < words_.size(); ++i) m.words_[i] = ~words_[i];
    m.trim();
    return m;
}

bool SubsetMask::intersects(const SubsetMask& o) const {
    require_same_width(o);
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & o.words_[i]) return true;
    return false;
}

bool SubsetMask::is_subset_of(const SubsetMask& o) const {
    require_same_width(o);
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & ~o.words_[i]) return false;
    return true;
}

bool SubsetMask::operator<(const SubsetMask& o) const {
    if (width_ != o.width_) return width_ < o.width_;
    for (std::size_t i = words_.size(); i-- > 0;)
        if (words_[i] != o.words_[i]) return words_[i] < o.words_[i];
    return false;
}

std::vector<int> SubsetMask::elements() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(count()));
    for_each([&](int i) { out.push_back(i); });
    return out;
}

std::size_t SubsetMask::hash() const {
    // FNV-1a over words plus width.
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&](std::uint64_t v) {
        h ^= v;
        h *= 1099511628211ull;
    };
    mix(static_cast<std::uint64_t>(width_));
    for (std::uint64_t w : words_) mix(w);
    return static_cast<std::size_t>(h);
}

bool SubsetMask::increment() {
    if (width_ == 0) return false;
    for (std::size_t i = 0; i < words_.size(); ++i) {
        if (++words_[i] != 0) break;
    }
    trim();
    return any();
}

void SubsetMask::trim() {
    int rem = width_ & 63;
    if (rem != 0 && !words_.empty())
        words_.back() &= (std::uint64_t{1} << rem) - 1;
}

GroundSet::GroundSet(std::vector<std::string> names) : names_(std::move(names)) {
    index_.reserve(names_.size());
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i].empty()) throw InputError("ground-set labels must be non-empty");
        auto [it, fresh] = index_.emplace(names_[i], static_cast<int>(i));
        if (!fresh) throw InputError("duplicate ground-set label: " + names_[i]);
    }
}

std::optional<int> GroundSet::index_of(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

DisjointPair::DisjointPair(SubsetMask s_, SubsetMask t_) : s(std::move(s_)), t(std::move(t_)) {
    if (s.intersects(t)) throw ContractError("DisjointPair requires S and T disjoint");
}

SubsetMask subset_parse(const GroundSet& ground, std::string_view text) {
    SubsetMask mask = ground.empty_mask();
    std::size_t pos = 0;
    if (text.empty()) return mask;
    while (true) {
        std::size_t comma = text.find(',', pos);
        std::string_view label = text.substr(pos, comma == std::string_view::npos ? comma : comma - pos);
        auto idx = ground.index_of(label);
        if (!idx) throw InputError("unknown element " + std::string(label));
        if (mask.test(*idx)) throw InputError("duplicate element " + std::string(label));
        mask.set(*idx);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return mask;
}

std::string render_subset(const GroundSet& ground, const SubsetMask& mask) {
    if (mask.width() != ground.size())
        throw ContractError("mask width does not match ground set");
    std::string out;
    bool first = true;
    mask.for_each([&](int i) {
        if (!first) out += ',';
        out += ground.name(i);
        first = false;
    });
    return out;
}

}  // namespace cutenc
