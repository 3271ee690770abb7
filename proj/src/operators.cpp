#include <json.hpp>

#include "annihilant/operators.hpp"

namespace annihilant {

namespace {

LinDiffOp::MultiIndex zero_index(const Space& sp) {
    return LinDiffOp::MultiIndex(sp.dims(), 0);
}

}  // namespace

LinDiffOp LinDiffOp::identity(Space sp) {
    return constant(sp, Coefficient::one());
}

LinDiffOp LinDiffOp::constant(Space sp, const Coefficient& c) {
    LinDiffOp op(sp);
    op.add_entry(zero_index(sp), c);
    return op;
}

LinDiffOp LinDiffOp::partial(Space sp, Coord coord, int order,
                             const Coefficient& coeff) {
    if (order < 0) throw Error("negative derivative order");
    MultiIndex mi = zero_index(sp);
    mi[slot_of(sp, coord)] = order;
    LinDiffOp op(sp);
    op.add_entry(mi, coeff);
    return op;
}

void LinDiffOp::add_entry(const MultiIndex& mi, const Coefficient& c) {
    if (static_cast<int>(mi.size()) != space_.dims())
        throw DimensionError("multi-index length does not match space");
    for (int o : mi)
        if (o < 0) throw Error("negative order in multi-index");
    if (c.is_zero()) return;
    auto it = coeffs_.find(mi);
    if (it == coeffs_.end()) {
        coeffs_.emplace(mi, c);
        return;
    }
    if (it->second.params() != c.params())
        throw Error("cannot merge coefficients with different parameters");
    Coefficient merged(it->second.rational() + c.rational(), c.params());
    if (merged.is_zero())
        coeffs_.erase(it);
    else
        it->second = merged;
}

LinDiffOp make_laplacian(int n) { return make_laplacian(Space{n, false}); }

LinDiffOp make_laplacian(Space sp) {
    std::vector<Coefficient> w(sp.dims(), Coefficient::one());
    return make_generalized_laplacian(sp, w);
}

LinDiffOp make_generalized_laplacian(Space sp,
                                     const std::vector<Coefficient>& weights) {
    if (static_cast<int>(weights.size()) != sp.dims())
        throw DimensionError("need one weight per coordinate");
    LinDiffOp op(sp);
    for (int s = 0; s < sp.dims(); ++s) {
        if (weights[s].is_zero()) throw Error("weights must be nonzero");
        LinDiffOp::MultiIndex mi(sp.dims(), 0);
        mi[s] = 2;
        op.add_entry(mi, weights[s]);
    }
    return op;
}

LinDiffOp make_incomplete_laplacian(Space sp,
                                    const std::vector<Coefficient>& weights,
                                    Coord excluded) {
    if (static_cast<int>(weights.size()) != sp.dims())
        throw DimensionError("need one weight per coordinate");
    int skip = slot_of(sp, excluded);
    LinDiffOp op(sp);
    for (int s = 0; s < sp.dims(); ++s) {
        if (s == skip) continue;
        if (weights[s].is_zero()) throw Error("weights must be nonzero");
        LinDiffOp::MultiIndex mi(sp.dims(), 0);
        mi[s] = 2;
        op.add_entry(mi, weights[s]);
    }
    return op;
}

LinDiffOp make_dalembert(const Coefficient& c, int spatial_n) {
    if (spatial_n < 1) throw DimensionError("wave operator needs n >= 1");
    Space sp{spatial_n, true};
    std::vector<Coefficient> w;
    w.push_back(c.pow(-2));
    for (int i = 0; i < spatial_n; ++i) w.push_back(Coefficient(Rational(-1)));
    return make_generalized_laplacian(sp, w);
}

LinDiffOp make_helmholtz(int n, int j, const Coefficient& nu) {
    if (j < 1) throw Error("helmholtz needs j >= 1");
    if (nu.is_zero()) throw Error("helmholtz needs nu != 0");
    LinDiffOp lap = make_laplacian(n);
    return op_add(op_pow(lap, j), LinDiffOp::constant(lap.space(), nu));
}

LinDiffOp make_const(Space sp, const Coefficient& v) {
    return LinDiffOp::constant(sp, v);
}

LinDiffOp op_add(const LinDiffOp& a, const LinDiffOp& b) {
    if (!(a.space() == b.space()))
        throw DimensionError("operators over different coordinate spaces");
    LinDiffOp out = a;
    for (const auto& [mi, c] : b.coeffs()) out.add_entry(mi, c);
    return out;
}

LinDiffOp op_sub(const LinDiffOp& a, const LinDiffOp& b) {
    return op_add(a, op_scale(b, Coefficient(Rational(-1))));
}

LinDiffOp op_compose(const LinDiffOp& a, const LinDiffOp& b) {
    if (!(a.space() == b.space()))
        throw DimensionError("operators over different coordinate spaces");
    LinDiffOp out(a.space());
    for (const auto& [ma, ca] : a.coeffs()) {
        for (const auto& [mb, cb] : b.coeffs()) {
            LinDiffOp::MultiIndex mi(ma.size());
            for (std::size_t s = 0; s < ma.size(); ++s) mi[s] = ma[s] + mb[s];
            out.add_entry(mi, ca * cb);
        }
    }
    return out;
}

LinDiffOp op_pow(const LinDiffOp& a, int p) {
    if (p < 0) throw Error("negative operator power");
    LinDiffOp out = LinDiffOp::identity(a.space());
    for (int i = 0; i < p; ++i) out = op_compose(out, a);
    return out;
}

LinDiffOp op_scale(const LinDiffOp& a, const Coefficient& c) {
    LinDiffOp out(a.space());
    if (c.is_zero()) return out;
    for (const auto& [mi, coeff] : a.coeffs()) out.add_entry(mi, coeff * c);
    return out;
}

Expr apply(const LinDiffOp& op, const Expr& e) {
    if (!(op.space() == e.space()))
        throw DimensionError("operator and expression spaces differ");
    Expr total = Expr::zero(e.space());
    for (const auto& [mi, c] : op.coeffs()) {
        Expr d = e;
        for (std::size_t s = 0; s < mi.size(); ++s)
            if (mi[s] > 0)
                d = derivative(d, coord_of_slot(op.space(), static_cast<int>(s)),
                               mi[s]);
        total = add(total, scale(d, c));
    }
    return total;
}

std::string op_to_json(const LinDiffOp& op) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& [mi, c] : op.coeffs()) {
        nlohmann::json je;
        je["orders"] = mi;
        je["coeff"]["num"] = c.rational().get_num().get_str();
        je["coeff"]["den"] = c.rational().get_den().get_str();
        je["coeff"]["params"] = nlohmann::json::object();
        for (const auto& [name, exp] : c.params())
            je["coeff"]["params"][name] = exp;
        entries.push_back(je);
    }
    nlohmann::json doc;
    doc["n"] = op.space().n;
    doc["has_time"] = op.space().has_time;
    doc["entries"] = entries;
    return doc.dump();
}

}  // namespace annihilant
