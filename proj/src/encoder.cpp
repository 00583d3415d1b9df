#include "cutenc/encoder.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <limits>
#include <thread>

#include "json.hpp"

namespace cutenc {

namespace {

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a + b;
    return s < a ? std::numeric_limits<std::uint64_t>::max() : s;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    if (a > std::numeric_limits<std::uint64_t>::max() / b)
        return std::numeric_limits<std::uint64_t>::max();
    return a * b;
}

std::uint64_t binomial_sat(int n, int j) {
    if (j < 0 || j > n) return 0;
    std::uint64_t r = 1;
    for (int i = 1; i <= j; ++i) {
        r = sat_mul(r, static_cast<std::uint64_t>(n - j + i));
        r /= static_cast<std::uint64_t>(i);
    }
    return r;
}

}  // namespace

std::uint64_t size_bound(int n, Value k) {
    std::uint64_t pairs_side = 0;
    for (Value i = 0; i <= k; ++i)
        pairs_side = sat_add(pairs_side, binomial_sat(n, static_cast<int>(i)));
    std::uint64_t markers = 0;
    for (Value j = 0; j <= 2 * k; ++j) {
        std::uint64_t term = binomial_sat(n + 2, static_cast<int>(j));
        for (Value b = 0; b < j; ++b) term = sat_mul(term, 2);
        markers = sat_add(markers, term);
    }
    return sat_mul(sat_mul(pairs_side, pairs_side), markers);
}

namespace {

// Masks with at most k bits set, ascending numerically.
std::vector<SubsetMask> masks_up_to_size(int n, Value k) {
    std::vector<SubsetMask> out;
    int cap = static_cast<int>(std::min<Value>(k, n));
    for (int s = 0; s <= cap; ++s) {
        std::vector<int> comb(static_cast<std::size_t>(s));
        for (int i = 0; i < s; ++i) comb[static_cast<std::size_t>(i)] = i;
        while (true) {
            out.push_back(SubsetMask::from_indices(n, comb));
            int i = s - 1;
            while (i >= 0 && comb[static_cast<std::size_t>(i)] == n - s + i) --i;
            if (i < 0) break;
            ++comb[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < s; ++j)
                comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct LiftedTriple {
    EncodingTriple triple;
    TripleProvenance prov;
};

std::vector<std::uint64_t> triple_key(const EncodingTriple& t) {
    std::vector<std::uint64_t> key;
    auto push = [&](const SubsetMask& m) {
        for (std::size_t i = 0; i < m.word_size(); ++i) key.push_back(m.words()[i]);
    };
    push(t.include);
    push(t.exclude);
    key.push_back(static_cast<std::uint64_t>(t.classes.size()));
    for (const auto& c : t.classes) push(c);
    return key;
}

// Everything one (S,T) pair contributes, in canonical per-pair order.
std::vector<LiftedTriple> encode_pair(const FStar& fs, Value k, const SubsetMask& s,
                                      const SubsetMask& t) {
    std::vector<LiftedTriple> out;
    if (fs(s, t) != k) return out;
    BlockDigraph bd = build_blocking(fs, s, t);
    PrunedDigraph pd = prune(bd);
    if (pd.conflict) return out;

    for (auto& code : closed_encodings(pd.d, static_cast<int>(2 * k))) {
        LiftedTriple lt;
        lt.triple.include = s | pd.forced_in | code.include;
        lt.triple.exclude = t | pd.forced_out | code.exclude;
        lt.triple.classes = std::move(code.classes);
        lt.prov = {s, t, code.marker.m1, code.marker.m2};
        out.push_back(std::move(lt));
    }
    return out;
}

}  // namespace

Representation encode(const ConnectivityFn& f, Value k, const SfmBackend& backend, int jobs,
                      bool with_provenance) {
    if (k < 0) throw ContractError("encode requires k >= 0");
    auto t0 = std::chrono::steady_clock::now();

    const int n = f.ground().size();
    FStar fs(f, backend);

    std::vector<SubsetMask> small = masks_up_to_size(n, k);
    std::vector<std::pair<SubsetMask, SubsetMask>> pairs;
    for (const auto& s : small)
        for (const auto& t : small)
            if (!s.intersects(t)) pairs.emplace_back(s, t);

    std::vector<std::vector<LiftedTriple>> per_pair(pairs.size());
    if (jobs <= 1) {
        for (std::size_t i = 0; i < pairs.size(); ++i)
            per_pair[i] = encode_pair(fs, k, pairs[i].first, pairs[i].second);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= pairs.size()) return;
                per_pair[i] = encode_pair(fs, k, pairs[i].first, pairs[i].second);
            }
        };
        std::vector<std::thread> threads;
        int count = std::min<int>(jobs, static_cast<int>(pairs.size()));
        threads.reserve(static_cast<std::size_t>(count));
        for (int i = 0; i < count; ++i) threads.emplace_back(worker);
        for (auto& th : threads) th.join();
    }

    Representation rep;
    rep.ground = f.ground();
    rep.k = k;
    std::set<std::vector<std::uint64_t>> seen;
    for (std::size_t i = 0; i < per_pair.size(); ++i) {
        if (!per_pair[i].empty()) ++rep.run_stats.contributing_pairs;
        for (auto& lt : per_pair[i]) {
            if (!seen.insert(triple_key(lt.triple)).second) continue;
            rep.triples.push_back(std::move(lt.triple));
            if (with_provenance) rep.provenance.push_back(std::move(lt.prov));
        }
    }

    rep.run_stats.triples = rep.triples.size();
    rep.run_stats.bound = size_bound(n, k);
    rep.run_stats.fstar_evals = fs.distinct_pairs();
    rep.run_stats.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (rep.run_stats.triples > rep.run_stats.bound)
        throw ContractError("representation exceeds its size bound");
    return rep;
}

std::set<SubsetMask> enumerate_family(const Representation& rep, std::uint64_t budget) {
    std::uint64_t planned = 0;
    for (const auto& t : rep.triples) {
        if (t.classes.size() >= 63) throw ResourceError("triple partition too large to expand");
        planned = sat_add(planned, std::uint64_t{1} << t.classes.size());
    }
    if (planned > budget)
        throw ResourceError("family expansion of " + std::to_string(planned) +
                            " sets exceeds the budget of " + std::to_string(budget) +
                            "; use member() instead");

    std::set<SubsetMask> family;
    for (const auto& t : rep.triples) {
        std::uint64_t subsets = std::uint64_t{1} << t.classes.size();
        for (std::uint64_t q = 0; q < subsets; ++q) {
            SubsetMask x = t.include;
            for (std::size_t c = 0; c < t.classes.size(); ++c)
                if ((q >> c) & 1) x |= t.classes[c];
            family.insert(std::move(x));
        }
    }
    return family;
}

bool member(const Representation& rep, const SubsetMask& x) {
    for (const auto& t : rep.triples) {
        if ((x & (t.include | t.exclude)) != t.include) continue;
        bool exact = true;
        for (const auto& c : t.classes) {
            SubsetMask overlap = x & c;
            if (overlap.any() && overlap != c) {
                exact = false;
                break;
            }
        }
        if (exact) return true;
    }
    return false;
}

EncodeStats stats(const Representation& rep) {
    if (rep.run_stats.triples > rep.run_stats.bound)
        throw ContractError("representation exceeds its size bound");
    return rep.run_stats;
}

namespace {

nlohmann::json labels_of(const GroundSet& ground, const SubsetMask& m) {
    nlohmann::json arr = nlohmann::json::array();
    m.for_each([&](int i) { arr.push_back(ground.name(i)); });
    return arr;
}

SubsetMask mask_of(const GroundSet& ground, const nlohmann::json& arr, const char* what) {
    if (!arr.is_array()) throw InputError(std::string(what) + " must be a label list");
    SubsetMask m = ground.empty_mask();
    for (const auto& item : arr) {
        if (!item.is_string()) throw InputError(std::string(what) + " entries must be labels");
        auto idx = ground.index_of(item.get<std::string>());
        if (!idx) throw InputError("unknown element " + item.get<std::string>());
        if (m.test(*idx)) throw InputError("duplicate element " + item.get<std::string>());
        m.set(*idx);
    }
    return m;
}

}  // namespace

std::string serialize(const Representation& rep, bool with_provenance) {
    nlohmann::json doc;
    doc["ground"] = rep.ground.names();
    doc["k"] = rep.k;
    nlohmann::json triples = nlohmann::json::array();
    bool emit_prov = with_provenance && rep.provenance.size() == rep.triples.size();
    for (std::size_t i = 0; i < rep.triples.size(); ++i) {
        const auto& t = rep.triples[i];
        nlohmann::json jt;
        jt["X"] = labels_of(rep.ground, t.include);
        jt["Y"] = labels_of(rep.ground, t.exclude);
        nlohmann::json cls = nlohmann::json::array();
        for (const auto& c : t.classes) cls.push_back(labels_of(rep.ground, c));
        jt["P"] = cls;
        if (emit_prov) {
            const auto& p = rep.provenance[i];
            jt["prov"] = {{"S", labels_of(rep.ground, p.s)},
                          {"T", labels_of(rep.ground, p.t)},
                          {"M1", labels_of(rep.ground, p.m1)},
                          {"M2", labels_of(rep.ground, p.m2)}};
        }
        triples.push_back(std::move(jt));
    }
    doc["triples"] = std::move(triples);
    return doc.dump(2) + "\n";
}

Representation deserialize(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("representation is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("ground") || !doc.contains("k") ||
        !doc.contains("triples"))
        throw InputError("representation must have ground, k and triples fields");

    Representation rep;
    if (!doc["ground"].is_array()) throw InputError("ground must be a label list");
    std::vector<std::string> names;
    for (const auto& item : doc["ground"]) {
        if (!item.is_string()) throw InputError("ground entries must be labels");
        names.push_back(item.get<std::string>());
    }
    rep.ground = GroundSet(std::move(names));
    if (!doc["k"].is_number_integer() || doc["k"].get<Value>() < 0)
        throw InputError("k must be a non-negative integer");
    rep.k = doc["k"].get<Value>();

    bool any_prov = false;
    for (const auto& jt : doc["triples"]) {
        EncodingTriple t;
        t.include = mask_of(rep.ground, jt.at("X"), "X");
        t.exclude = mask_of(rep.ground, jt.at("Y"), "Y");
        if (t.include.intersects(t.exclude)) throw InputError("triple has overlapping X and Y");
        SubsetMask covered = t.include | t.exclude;
        if (!jt.at("P").is_array()) throw InputError("P must be a list of classes");
        for (const auto& jc : jt.at("P")) {
            SubsetMask c = mask_of(rep.ground, jc, "P class");
            if (c.none()) throw InputError("P classes must be non-empty");
            if (c.intersects(covered)) throw InputError("P classes must be disjoint from X, Y and each other");
            covered |= c;
            t.classes.push_back(std::move(c));
        }
        if (covered != rep.ground.full_mask())
            throw InputError("X, Y and P must cover the ground set");
        TripleProvenance prov{rep.ground.empty_mask(), rep.ground.empty_mask(),
                              rep.ground.empty_mask(), rep.ground.empty_mask()};
        if (jt.contains("prov")) {
            any_prov = true;
            prov.s = mask_of(rep.ground, jt["prov"].at("S"), "prov.S");
            prov.t = mask_of(rep.ground, jt["prov"].at("T"), "prov.T");
            prov.m1 = mask_of(rep.ground, jt["prov"].at("M1"), "prov.M1");
            prov.m2 = mask_of(rep.ground, jt["prov"].at("M2"), "prov.M2");
        }
        rep.triples.push_back(std::move(t));
        rep.provenance.push_back(std::move(prov));
    }
    if (!any_prov) rep.provenance.clear();
    rep.run_stats.triples = rep.triples.size();
    rep.run_stats.bound = size_bound(rep.ground.size(), rep.k);
    return rep;
}

Representation load_representation_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return deserialize(text);
}

}  // namespace cutenc
