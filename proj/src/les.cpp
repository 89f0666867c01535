#include <stdexcept>

#include "kqcoop/ext.hpp"

namespace kqcoop {

namespace {

// cochain pushed forward along a basis map x -> sum tau^k y
BitVector push(const ExtComputation& src, const ExtComputation& tgt, Tri c, const BitVector& v,
               const std::vector<std::vector<std::pair<int, int>>>& images) {
    const auto& sb = src.basis(c);
    const auto& tb = tgt.basis(c);
    BitVector out(tb.size());
    for (size_t i : v.support()) {
        auto [g, x, p] = sb.coords[i];
        for (const auto& [y, k] : images[x]) {
            int j = tb.find(g, y);
            if (j < 0 || tb.coords[j][2] != p + k) throw std::logic_error("les: map leaves the cochain basis at " + c.str());
            out.flip(j);
        }
    }
    return out;
}

MatrixF2 columns(const ExtComputation& tgt, Tri c, const std::vector<BitVector>& cocycles) {
    MatrixF2 m(tgt.chart().dim(c), cocycles.size());
    for (size_t i = 0; i < cocycles.size(); ++i)
        for (size_t r : tgt.coordinates(c, cocycles[i]).support()) m.set(r, i);
    return m;
}

}  // namespace

MatrixF2 induced_map(const ExtComputation& src, const ExtComputation& tgt, const ComoduleMap& f, Tri c) {
    std::vector<BitVector> out;
    for (const auto& z : src.representatives(c)) out.push_back(push(src, tgt, c, z, f.images));
    return columns(tgt, c, out);
}

MatrixF2 connecting_map(const ExtComputation& k, const ExtComputation& mid, const ExtComputation& q, const ShortExactSeq& ses,
                        Tri c) {
    std::vector<std::vector<std::pair<int, int>>> section(ses.quotient.rank()), pullback(ses.middle.rank());
    for (size_t m = 0; m < ses.middle.rank(); ++m) {
        const auto& im = ses.projection.images[m];
        if (im.size() == 1 && im[0].second == 0 && section[im[0].first].empty()) section[im[0].first] = {{static_cast<int>(m), 0}};
    }
    for (size_t i = 0; i < ses.kernel.rank(); ++i) {
        const auto& im = ses.inclusion.images[i];
        if (im.size() != 1 || im[0].second != 0) throw std::logic_error("connecting_map: inclusion is not a basis embedding");
        pullback[im[0].first] = {{static_cast<int>(i), 0}};
    }
    for (size_t i = 0; i < section.size(); ++i)
        if (section[i].empty()) throw std::logic_error("connecting_map: no basis section for " + ses.quotient.basis[i].label);
    Tri up{c.s + 1, c.t, c.w};
    std::vector<BitVector> out;
    for (const auto& z : q.representatives(c)) {
        BitVector lifted = mid.differential(c, push(q, mid, c, z, section));
        // lifted lies in the image of the kernel
        const auto& mb = mid.basis(up);
        for (size_t i : lifted.support())
            if (pullback[mb.coords[i][1]].empty()) throw std::logic_error("connecting_map: boundary leaves the kernel at " + c.str());
        out.push_back(push(mid, k, up, lifted, pullback));
    }
    return columns(k, up, out);
}

LesReport check_les(const ShortExactSeq& ses, const Window& window) {
    LesReport rep;
    Window w{window.s_max, window.t_max, window.w_min, 0};
    ExtComputation ek(ses.kernel, w), em(ses.middle, w), eq(ses.quotient, w);
    std::set<Tri> cells;
    for (const auto* e : {&ek, &em, &eq})
        for (const auto& [c, d] : e->chart().dims) cells.insert(c);
    auto fail = [&](const std::string& what, Tri c) {
        rep.pass = false;
        rep.failures.push_back(what + " at " + c.str());
    };
    for (Tri c : cells) {
        if (c.s + 1 > w.s_max) continue;
        Tri up{c.s + 1, c.t, c.w};
        MatrixF2 i0 = induced_map(ek, em, ses.inclusion, c);
        MatrixF2 p0 = induced_map(em, eq, ses.projection, c);
        MatrixF2 d0 = connecting_map(ek, em, eq, ses, c);
        MatrixF2 i1 = induced_map(ek, em, ses.inclusion, up);
        ++rep.checked;
        if (!(p0 * i0).is_zero()) fail("p∘i != 0", c);
        if (!(d0 * p0).is_zero()) fail("δ∘p != 0", c);
        if (!(i1 * d0).is_zero()) fail("i∘δ != 0", c);
        if (em.chart().dim(c) - rank(p0) != rank(i0)) fail("ker p != im i", c);
        if (eq.chart().dim(c) - rank(d0) != rank(p0)) fail("ker δ != im p", c);
        if (ek.chart().dim(up) - rank(i1) != rank(d0)) fail("ker i != im δ", up);
    }
    return rep;
}

}  // namespace kqcoop
