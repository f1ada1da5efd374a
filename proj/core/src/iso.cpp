#include "kancat/iso.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace kancat {

const char* to_string(IsoStatus status) {
    switch (status) {
        case IsoStatus::Found: return "found";
        case IsoStatus::None: return "none";
        case IsoStatus::Undecided: return "undecided";
    }
    return "?";
}

namespace {

using Sig = std::vector<std::int64_t>;

// Assigns shared class ids to the signatures of both sides.
std::pair<std::vector<int>, std::vector<int>> classify(const std::vector<Sig>& a, const std::vector<Sig>& b) {
    std::map<Sig, int> ids;
    for (const auto& s : a) ids.emplace(s, 0);
    for (const auto& s : b) ids.emplace(s, 0);
    int next = 0;
    for (auto& [sig, id] : ids) id = next++;
    std::vector<int> ca, cb;
    for (const auto& s : a) ca.push_back(ids[s]);
    for (const auto& s : b) cb.push_back(ids[s]);
    return {ca, cb};
}

bool same_histogram(std::vector<int> a, std::vector<int> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

std::vector<Sig> object_sigs(const FinCategory& c) {
    std::vector<Sig> out;
    const int n = static_cast<int>(c.num_objects());
    for (int o = 0; o < n; ++o) {
        std::vector<std::int64_t> hom_out(static_cast<std::size_t>(n), 0), hom_in(static_cast<std::size_t>(n), 0);
        for (int f : c.out_arrows(o)) ++hom_out[static_cast<std::size_t>(c.cod(f))];
        for (int f : c.in_arrows(o)) ++hom_in[static_cast<std::size_t>(c.dom(f))];
        const auto endo = hom_out[static_cast<std::size_t>(o)];
        std::sort(hom_out.begin(), hom_out.end());
        std::sort(hom_in.begin(), hom_in.end());
        Sig s{static_cast<std::int64_t>(c.out_arrows(o).size()), static_cast<std::int64_t>(c.in_arrows(o).size()), endo};
        s.insert(s.end(), hom_out.begin(), hom_out.end());
        s.push_back(-1);
        s.insert(s.end(), hom_in.begin(), hom_in.end());
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<Sig> morphism_sigs(const FinCategory& c, const std::vector<int>& obj_class) {
    const int m = static_cast<int>(c.num_morphisms());
    std::vector<std::int64_t> factorizations(static_cast<std::size_t>(m), 0);
    for (int g = 0; g < m; ++g) {
        for (int h : c.out_arrows(c.cod(g))) {
            const int gh = c.compose(g, h);
            if (gh >= 0) ++factorizations[static_cast<std::size_t>(gh)];
        }
    }
    std::vector<Sig> out;
    for (int f = 0; f < m; ++f) {
        Sig s{obj_class[static_cast<std::size_t>(c.dom(f))], obj_class[static_cast<std::size_t>(c.cod(f))],
              c.is_identity(f) ? 1 : 0, factorizations[static_cast<std::size_t>(f)]};
        if (c.dom(f) == c.cod(f)) {
            // index and period of the power sequence f, f^2, ...
            std::vector<int> seen{f};
            int cur = f;
            while (true) {
                cur = c.compose(cur, f);
                if (cur < 0) {
                    s.push_back(-1);
                    break;
                }
                auto it = std::find(seen.begin(), seen.end(), cur);
                if (it != seen.end()) {
                    s.push_back(it - seen.begin());
                    s.push_back(static_cast<std::int64_t>(seen.end() - it));
                    break;
                }
                seen.push_back(cur);
            }
        }
        out.push_back(std::move(s));
    }
    return out;
}

// Object signature refined by the classes of incident morphisms.
std::vector<Sig> refine_objects(const FinCategory& c, const std::vector<int>& obj_class,
                                const std::vector<int>& mor_class) {
    std::vector<Sig> out;
    for (int o = 0; o < static_cast<int>(c.num_objects()); ++o) {
        Sig s{obj_class[static_cast<std::size_t>(o)]};
        std::vector<std::int64_t> outs, ins;
        for (int f : c.out_arrows(o)) outs.push_back(mor_class[static_cast<std::size_t>(f)]);
        for (int f : c.in_arrows(o)) ins.push_back(mor_class[static_cast<std::size_t>(f)]);
        std::sort(outs.begin(), outs.end());
        std::sort(ins.begin(), ins.end());
        s.insert(s.end(), outs.begin(), outs.end());
        s.push_back(-1);
        s.insert(s.end(), ins.begin(), ins.end());
        out.push_back(std::move(s));
    }
    return out;
}

struct BudgetExhausted {};

class Search {
public:
    Search(const FinCategory& c, const FinCategory& d, std::vector<int> cc, std::vector<int> dc, std::vector<int> oc,
           std::vector<int> od, std::int64_t budget)
        : c_(c), d_(d), cls_c_(std::move(cc)), cls_d_(std::move(dc)), ocls_c_(std::move(oc)), ocls_d_(std::move(od)),
          budget_(budget) {
        fwd_.assign(c.num_morphisms(), -1);
        bwd_.assign(d.num_morphisms(), -1);
        ofwd_.assign(c.num_objects(), -1);
        obwd_.assign(d.num_objects(), -1);
        int classes = 0;
        for (int k : cls_c_) classes = std::max(classes, k + 1);
        for (int k : cls_d_) classes = std::max(classes, k + 1);
        by_class_.assign(static_cast<std::size_t>(classes), {});
        for (int g = 0; g < static_cast<int>(d.num_morphisms()); ++g) by_class_[static_cast<std::size_t>(cls_d_[static_cast<std::size_t>(g)])].push_back(g);
        order_.resize(c.num_morphisms());
        std::iota(order_.begin(), order_.end(), 0);
        std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
            return by_class_[static_cast<std::size_t>(cls_c_[static_cast<std::size_t>(a)])].size() <
                   by_class_[static_cast<std::size_t>(cls_c_[static_cast<std::size_t>(b)])].size();
        });
    }

    bool run() { return search(); }
    std::int64_t steps() const { return steps_; }
    const std::vector<int>& objects() const { return ofwd_; }
    const std::vector<int>& morphisms() const { return fwd_; }

private:
    bool set_object(int o, int o2) {
        if (ofwd_[static_cast<std::size_t>(o)] == o2) return true;
        if (ofwd_[static_cast<std::size_t>(o)] != -1 || obwd_[static_cast<std::size_t>(o2)] != -1) return false;
        if (ocls_c_[static_cast<std::size_t>(o)] != ocls_d_[static_cast<std::size_t>(o2)]) return false;
        ofwd_[static_cast<std::size_t>(o)] = o2;
        obwd_[static_cast<std::size_t>(o2)] = o;
        trail_.emplace_back(true, o);
        return assign(c_.identity(o), d_.identity(o2));
    }

    bool assign(int f, int g) {
        if (fwd_[static_cast<std::size_t>(f)] == g) return true;
        if (fwd_[static_cast<std::size_t>(f)] != -1 || bwd_[static_cast<std::size_t>(g)] != -1) return false;
        if (cls_c_[static_cast<std::size_t>(f)] != cls_d_[static_cast<std::size_t>(g)]) return false;
        fwd_[static_cast<std::size_t>(f)] = g;
        bwd_[static_cast<std::size_t>(g)] = f;
        trail_.emplace_back(false, f);
        queue_.push_back(f);
        return set_object(c_.dom(f), d_.dom(g)) && set_object(c_.cod(f), d_.cod(g));
    }

    bool match(int x, int y) {
        if (x < 0 || y < 0) return x < 0 && y < 0;
        return assign(x, y);
    }

    bool propagate() {
        while (head_ < queue_.size()) {
            const int f = queue_[head_++];
            const int image = fwd_[static_cast<std::size_t>(f)];
            for (int h : c_.out_arrows(c_.cod(f))) {
                const int hi = fwd_[static_cast<std::size_t>(h)];
                if (hi != -1 && !match(c_.compose(f, h), d_.compose(image, hi))) return false;
            }
            for (int h : c_.in_arrows(c_.dom(f))) {
                const int hi = fwd_[static_cast<std::size_t>(h)];
                if (hi != -1 && !match(c_.compose(h, f), d_.compose(hi, image))) return false;
            }
        }
        return true;
    }

    void undo(std::size_t mark) {
        while (trail_.size() > mark) {
            auto [is_obj, idx] = trail_.back();
            trail_.pop_back();
            if (is_obj) {
                obwd_[static_cast<std::size_t>(ofwd_[static_cast<std::size_t>(idx)])] = -1;
                ofwd_[static_cast<std::size_t>(idx)] = -1;
            } else {
                bwd_[static_cast<std::size_t>(fwd_[static_cast<std::size_t>(idx)])] = -1;
                fwd_[static_cast<std::size_t>(idx)] = -1;
            }
        }
        queue_.clear();
        head_ = 0;
    }

    int pick() const {
        int fallback = -1;
        for (int f : order_) {
            if (fwd_[static_cast<std::size_t>(f)] != -1) continue;
            if (ofwd_[static_cast<std::size_t>(c_.dom(f))] != -1 || ofwd_[static_cast<std::size_t>(c_.cod(f))] != -1) return f;
            if (fallback == -1) fallback = f;
        }
        return fallback;
    }

    bool search() {
        if (++steps_ > budget_) throw BudgetExhausted{};
        const int f = pick();
        if (f == -1) return true;
        const int od = ofwd_[static_cast<std::size_t>(c_.dom(f))];
        const int oc = ofwd_[static_cast<std::size_t>(c_.cod(f))];
        for (int g : by_class_[static_cast<std::size_t>(cls_c_[static_cast<std::size_t>(f)])]) {
            if (bwd_[static_cast<std::size_t>(g)] != -1) continue;
            if ((od != -1 && d_.dom(g) != od) || (oc != -1 && d_.cod(g) != oc)) continue;
            const std::size_t mark = trail_.size();
            queue_.clear();
            head_ = 0;
            if (assign(f, g) && propagate() && search()) return true;
            undo(mark);
        }
        return false;
    }

    const FinCategory& c_;
    const FinCategory& d_;
    std::vector<int> cls_c_, cls_d_, ocls_c_, ocls_d_;
    std::int64_t budget_;
    std::int64_t steps_ = 0;
    std::vector<int> fwd_, bwd_, ofwd_, obwd_;
    std::vector<std::vector<int>> by_class_;
    std::vector<int> order_;
    std::vector<std::pair<bool, int>> trail_;
    std::vector<int> queue_;
    std::size_t head_ = 0;
};

}  // namespace

bool is_isomorphism(const FinCategory& c, const FinCategory& d, const std::vector<int>& objects,
                    const std::vector<int>& morphisms) {
    if (c.num_objects() != d.num_objects() || c.num_morphisms() != d.num_morphisms()) return false;
    if (objects.size() != c.num_objects() || morphisms.size() != c.num_morphisms()) return false;
    std::vector<char> hit_o(d.num_objects(), 0), hit_m(d.num_morphisms(), 0);
    for (int o2 : objects) {
        if (o2 < 0 || o2 >= static_cast<int>(d.num_objects()) || hit_o[static_cast<std::size_t>(o2)]) return false;
        hit_o[static_cast<std::size_t>(o2)] = 1;
    }
    for (int g : morphisms) {
        if (g < 0 || g >= static_cast<int>(d.num_morphisms()) || hit_m[static_cast<std::size_t>(g)]) return false;
        hit_m[static_cast<std::size_t>(g)] = 1;
    }
    auto F = [&](int f) { return morphisms[static_cast<std::size_t>(f)]; };
    auto O = [&](int o) { return objects[static_cast<std::size_t>(o)]; };
    for (int o = 0; o < static_cast<int>(c.num_objects()); ++o) {
        if (F(c.identity(o)) != d.identity(O(o))) return false;
    }
    for (int f = 0; f < static_cast<int>(c.num_morphisms()); ++f) {
        if (d.dom(F(f)) != O(c.dom(f)) || d.cod(F(f)) != O(c.cod(f))) return false;
        for (int g : c.out_arrows(c.cod(f))) {
            const int fg = c.compose(f, g);
            const int image = d.compose(F(f), F(g));
            if (fg < 0 ? image >= 0 : image != F(fg)) return false;
        }
    }
    return true;
}

IsoResult category_iso(const FinCategory& c, const FinCategory& d, const IsoOptions& options) {
    IsoResult result;
    if (c.num_objects() != d.num_objects()) {
        result.reason = "object counts differ (" + std::to_string(c.num_objects()) + " vs " +
                        std::to_string(d.num_objects()) + ")";
        return result;
    }
    if (c.num_morphisms() != d.num_morphisms()) {
        result.reason = "morphism counts differ (" + std::to_string(c.num_morphisms()) + " vs " +
                        std::to_string(d.num_morphisms()) + ")";
        return result;
    }

    auto [oc, od] = classify(object_sigs(c), object_sigs(d));
    std::vector<int> mc, md;
    for (int round = 0; round < 3; ++round) {
        if (!same_histogram(oc, od)) {
            result.reason = "object invariants differ";
            return result;
        }
        std::tie(mc, md) = classify(morphism_sigs(c, oc), morphism_sigs(d, od));
        if (!same_histogram(mc, md)) {
            result.reason = "morphism invariants differ";
            return result;
        }
        std::tie(oc, od) = classify(refine_objects(c, oc, mc), refine_objects(d, od, md));
    }
    if (!same_histogram(oc, od)) {
        result.reason = "object invariants differ";
        return result;
    }
    std::tie(mc, md) = classify(morphism_sigs(c, oc), morphism_sigs(d, od));
    if (!same_histogram(mc, md)) {
        result.reason = "morphism invariants differ";
        return result;
    }

    if (static_cast<std::int64_t>(c.num_objects()) > options.object_cap) {
        result.status = IsoStatus::Undecided;
        result.reason = "undecided under cap: " + std::to_string(c.num_objects()) + " objects exceeds iso_cap=" +
                        std::to_string(options.object_cap);
        return result;
    }

    Search search(c, d, mc, md, oc, od, options.step_budget);
    try {
        const bool ok = search.run();
        result.steps = search.steps();
        if (!ok) {
            result.reason = "exhaustive search found no isomorphism";
            return result;
        }
    } catch (const BudgetExhausted&) {
        result.steps = search.steps();
        result.status = IsoStatus::Undecided;
        result.reason = "undecided under cap: step budget iso_steps=" + std::to_string(options.step_budget) + " exhausted";
        return result;
    }
    if (!is_isomorphism(c, d, search.objects(), search.morphisms())) {
        result.reason = "internal: search result failed verification";
        return result;
    }
    result.status = IsoStatus::Found;
    result.objects = search.objects();
    result.morphisms = search.morphisms();
    return result;
}

IsoResult invert_iso(const IsoResult& iso) {
    IsoResult out = iso;
    if (!iso.found()) return out;
    out.objects.assign(iso.objects.size(), -1);
    out.morphisms.assign(iso.morphisms.size(), -1);
    for (std::size_t i = 0; i < iso.objects.size(); ++i) out.objects[static_cast<std::size_t>(iso.objects[i])] = static_cast<int>(i);
    for (std::size_t i = 0; i < iso.morphisms.size(); ++i) out.morphisms[static_cast<std::size_t>(iso.morphisms[i])] = static_cast<int>(i);
    return out;
}

IsoResult compose_iso(const IsoResult& ab, const IsoResult& bc) {
    IsoResult out;
    if (!ab.found() || !bc.found()) {
        out.status = ab.found() ? bc.status : ab.status;
        out.reason = "cannot compose: a factor was not found";
        return out;
    }
    out.status = IsoStatus::Found;
    for (int o : ab.objects) out.objects.push_back(bc.objects.at(static_cast<std::size_t>(o)));
    for (int f : ab.morphisms) out.morphisms.push_back(bc.morphisms.at(static_cast<std::size_t>(f)));
    return out;
}

}  // namespace kancat
