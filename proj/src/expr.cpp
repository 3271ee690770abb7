#include "annihilant/expr.hpp"

#include <algorithm>
#include <utility>

namespace annihilant {

int slot_of(const Space& sp, Coord c) {
    if (!c.valid_in(sp))
        throw DimensionError("coordinate " + c.name() + " not in space");
    if (sp.has_time) return c.is_time() ? 0 : c.id();
    return c.id() - 1;
}

Coord coord_of_slot(const Space& sp, int slot) {
    if (slot < 0 || slot >= sp.dims())
        throw DimensionError("slot out of range");
    if (sp.has_time) return slot == 0 ? Coord::t() : Coord::x(slot);
    return Coord::x(slot + 1);
}

int compare_atoms(const Atom& a, const Atom& b) {
    if (a.power != b.power) return a.power > b.power ? -1 : 1;
    if (a.exp_rate != b.exp_rate) return a.exp_rate > b.exp_rate ? -1 : 1;
    if (a.trig != b.trig)
        return static_cast<int>(a.trig) < static_cast<int>(b.trig) ? -1 : 1;
    if (a.freq != b.freq) return a.freq < b.freq ? -1 : 1;
    return 0;
}

namespace {

int compare_atom_maps(const std::map<int, Atom>& a, const std::map<int, Atom>& b) {
    auto ia = a.begin();
    auto ib = b.begin();
    for (; ia != a.end() && ib != b.end(); ++ia, ++ib) {
        if (ia->first != ib->first) return ia->first < ib->first ? -1 : 1;
        if (int c = compare_atoms(ia->second, ib->second); c != 0) return c;
    }
    if (ia != a.end()) return 1;
    if (ib != b.end()) return -1;
    return 0;
}

// Canonical term order: atoms first, parameter monomial second. The rational
// part never participates (merged terms are unique per key).
bool term_less(const Term& a, const Term& b) {
    if (int c = compare_atom_maps(a.atoms, b.atoms); c != 0) return c < 0;
    return compare_params(a.coeff.params(), b.coeff.params()) < 0;
}

bool term_key_equal(const Term& a, const Term& b) {
    return a.atoms == b.atoms && a.coeff.params() == b.coeff.params();
}

// Folds trig sign conventions into the term: cos(-f x) = cos(f x),
// sin(-f x) = -sin(f x), cos(0) = 1, sin(0) = 0. Returns false when the whole
// term vanishes.
bool normalize_atom(Atom& atom, Coefficient& coeff) {
    if (atom.power < 0) throw Error("negative power outside the term class");
    if (atom.trig == Trig::none) {
        atom.freq = 0;
        return true;
    }
    if (atom.freq == 0) {
        if (atom.trig == Trig::sin) return false;
        atom.trig = Trig::none;
        return true;
    }
    if (atom.freq < 0) {
        atom.freq = -atom.freq;
        if (atom.trig == Trig::sin) coeff = -coeff;
    }
    return true;
}

}  // namespace

Expr Expr::constant(Space sp, const Coefficient& c) {
    return from_terms(sp, {Term{c, {}}});
}

Expr Expr::monomial(Space sp, Coord c, int power, const Coefficient& coeff) {
    Atom a;
    a.power = power;
    return from_terms(sp, {Term{coeff, {{c.id(), a}}}});
}

Expr Expr::from_terms(Space sp, std::vector<Term> terms) {
    std::vector<Term> clean;
    clean.reserve(terms.size());
    for (Term& t : terms) {
        if (t.coeff.is_zero()) continue;
        Term out;
        out.coeff = t.coeff;
        bool alive = true;
        for (auto& [coord, atom] : t.atoms) {
            if (!Coord::x(coord).valid_in(sp))
                throw DimensionError("atom on coordinate id " +
                                     std::to_string(coord) + " outside space");
            Atom a = atom;
            if (!normalize_atom(a, out.coeff)) {
                alive = false;
                break;
            }
            if (!a.is_identity()) out.atoms.emplace(coord, a);
        }
        if (alive && !out.coeff.is_zero()) clean.push_back(std::move(out));
    }

    std::sort(clean.begin(), clean.end(), term_less);

    Expr result(sp);
    for (Term& t : clean) {
        if (!result.terms_.empty() && term_key_equal(result.terms_.back(), t)) {
            Term& last = result.terms_.back();
            last.coeff = Coefficient(last.coeff.rational() + t.coeff.rational(),
                                     last.coeff.params());
            if (last.coeff.is_zero()) result.terms_.pop_back();
        } else {
            result.terms_.push_back(std::move(t));
        }
    }
    return result;
}

namespace {

void require_same_space(const Expr& a, const Expr& b) {
    if (!(a.space() == b.space()))
        throw DimensionError("operands over different coordinate spaces");
}

}  // namespace

Expr add(const Expr& a, const Expr& b) {
    require_same_space(a, b);
    std::vector<Term> terms = a.terms();
    terms.insert(terms.end(), b.terms().begin(), b.terms().end());
    return Expr::from_terms(a.space(), std::move(terms));
}

Expr sub(const Expr& a, const Expr& b) { return add(a, -b); }

Expr Expr::operator-() const {
    Expr out(space_);
    out.terms_ = terms_;
    for (Term& t : out.terms_) t.coeff = -t.coeff;
    return out;
}

Expr scale(const Expr& e, const Coefficient& c) {
    if (c.is_zero()) return Expr::zero(e.space());
    std::vector<Term> terms = e.terms();
    for (Term& t : terms) t.coeff = t.coeff * c;
    return Expr::from_terms(e.space(), std::move(terms));
}

namespace {

// Product of two single-coordinate factors. Multiple results appear when a
// product of trig factors is rewritten via the product-to-sum identities so
// that each term keeps at most one trig factor per coordinate.
std::vector<std::pair<Rational, Atom>> atom_mul(const Atom& a, const Atom& b) {
    Atom base;
    base.power = a.power + b.power;
    base.exp_rate = a.exp_rate + b.exp_rate;

    if (a.trig == Trig::none || b.trig == Trig::none) {
        const Atom& src = a.trig == Trig::none ? b : a;
        base.trig = src.trig;
        base.freq = src.freq;
        return {{Rational(1), base}};
    }

    const Rational& fa = a.freq;
    const Rational& fb = b.freq;
    Rational half(1, 2);
    Atom lo = base, hi = base;
    lo.freq = fa - fb;
    hi.freq = fa + fb;
    if (a.trig == Trig::cos && b.trig == Trig::cos) {
        // cos cos -> (cos(a-b) + cos(a+b)) / 2
        lo.trig = hi.trig = Trig::cos;
        return {{half, lo}, {half, hi}};
    }
    if (a.trig == Trig::sin && b.trig == Trig::sin) {
        // sin sin -> (cos(a-b) - cos(a+b)) / 2
        lo.trig = hi.trig = Trig::cos;
        return {{half, lo}, {-half, hi}};
    }
    // sin cos -> (sin(a-b) + sin(a+b)) / 2, with the sin factor first
    lo.trig = hi.trig = Trig::sin;
    if (a.trig == Trig::sin) {
        return {{half, lo}, {half, hi}};
    }
    // cos(a) sin(b) = (sin(a+b) - sin(a-b)) / 2
    return {{-half, lo}, {half, hi}};
}

std::vector<Term> term_mul(const Term& a, const Term& b) {
    std::vector<Term> partial{Term{a.coeff * b.coeff, {}}};
    std::map<int, std::vector<std::pair<Rational, Atom>>> options;
    for (const auto& [coord, atom] : a.atoms) {
        auto it = b.atoms.find(coord);
        if (it == b.atoms.end())
            options[coord] = {{Rational(1), atom}};
        else
            options[coord] = atom_mul(atom, it->second);
    }
    for (const auto& [coord, atom] : b.atoms)
        if (!a.atoms.count(coord)) options[coord] = {{Rational(1), atom}};

    for (const auto& [coord, opts] : options) {
        std::vector<Term> next;
        next.reserve(partial.size() * opts.size());
        for (const Term& base : partial) {
            for (const auto& [factor, atom] : opts) {
                Term t = base;
                t.coeff = t.coeff * Coefficient(factor);
                t.atoms[coord] = atom;
                next.push_back(std::move(t));
            }
        }
        partial = std::move(next);
    }
    return partial;
}

}  // namespace

Expr mul(const Expr& a, const Expr& b) {
    require_same_space(a, b);
    std::vector<Term> terms;
    for (const Term& ta : a.terms()) {
        for (const Term& tb : b.terms()) {
            auto prod = term_mul(ta, tb);
            terms.insert(terms.end(), prod.begin(), prod.end());
        }
    }
    return Expr::from_terms(a.space(), std::move(terms));
}

Expr pow(const Expr& e, int exponent) {
    if (exponent < 0) throw Error("negative expression power");
    Expr out = Expr::constant(e.space(), Rational(1));
    for (int i = 0; i < exponent; ++i) out = mul(out, e);
    return out;
}

Expr operator+(const Expr& a, const Expr& b) { return add(a, b); }
Expr operator-(const Expr& a, const Expr& b) { return sub(a, b); }
Expr operator*(const Expr& a, const Expr& b) { return mul(a, b); }

// ---------------------------------------------------------------------------
// Calculus

namespace {

// d/dx of x^p e^(r x) T(f x): product rule over the three factors.
std::vector<std::pair<Rational, Atom>> atom_derivative(const Atom& a) {
    std::vector<std::pair<Rational, Atom>> out;
    if (a.power > 0) {
        Atom d = a;
        d.power -= 1;
        out.push_back({Rational(a.power), d});
    }
    if (a.exp_rate != 0) out.push_back({a.exp_rate, a});
    if (a.trig == Trig::cos) {
        Atom d = a;
        d.trig = Trig::sin;
        out.push_back({-a.freq, d});
    } else if (a.trig == Trig::sin) {
        Atom d = a;
        d.trig = Trig::cos;
        out.push_back({a.freq, d});
    }
    return out;
}

struct ComplexRational {
    Rational re, im;

    ComplexRational operator*(const ComplexRational& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    ComplexRational operator/(const ComplexRational& o) const {
        Rational n = o.re * o.re + o.im * o.im;
        return {(re * o.re + im * o.im) / n, (im * o.re - re * o.im) / n};
    }
    ComplexRational operator*(const Rational& s) const { return {re * s, im * s}; }
    ComplexRational operator-() const { return {-re, -im}; }
};

// The unique antiderivative of x^p e^(r x) T(f x) inside the closed class,
// with no additive constant. For r = f = 0 this is the power rule; otherwise
// integrate x^p e^((r+i f)x) by parts exactly over the Gaussian rationals and
// take the real (cos) or imaginary (sin) part.
std::vector<std::pair<Rational, Atom>> atom_antiderivative(const Atom& a) {
    if (a.exp_rate == 0 && a.trig == Trig::none) {
        Atom up = a;
        up.power += 1;
        return {{Rational(1, up.power), up}};
    }

    ComplexRational gamma{a.exp_rate, a.trig == Trig::none ? Rational(0) : a.freq};
    std::vector<std::pair<Rational, Atom>> out;
    ComplexRational c = ComplexRational{Rational(1), Rational(0)} / gamma;
    for (int j = 0;; ++j) {
        Atom piece = a;
        piece.power = a.power - j;
        if (a.trig == Trig::none) {
            out.push_back({c.re, piece});
        } else if (a.trig == Trig::cos) {
            // Re(e^(gamma x) c x^p) with c = re + i im
            Atom cosp = piece, sinp = piece;
            cosp.trig = Trig::cos;
            sinp.trig = Trig::sin;
            if (c.re != 0) out.push_back({c.re, cosp});
            if (c.im != 0) out.push_back({-c.im, sinp});
        } else {
            Atom cosp = piece, sinp = piece;
            cosp.trig = Trig::cos;
            sinp.trig = Trig::sin;
            if (c.im != 0) out.push_back({c.im, cosp});
            if (c.re != 0) out.push_back({c.re, sinp});
        }
        if (j == a.power) break;
        c = -(c * Rational(a.power - j)) / gamma;
    }
    return out;
}

Expr map_atom_pieces(const Expr& e, Coord coord, bool absent_is_zero,
                     std::vector<std::pair<Rational, Atom>> (*op)(const Atom&)) {
    std::vector<Term> terms;
    for (const Term& t : e.terms()) {
        Atom base;  // implicit x^0 when the coordinate is absent
        auto it = t.atoms.find(coord.id());
        if (it == t.atoms.end()) {
            if (absent_is_zero) continue;
        } else {
            base = it->second;
        }
        for (const auto& [factor, atom] : op(base)) {
            Term nt = t;
            nt.coeff = nt.coeff * Coefficient(factor);
            if (atom.is_identity())
                nt.atoms.erase(coord.id());
            else
                nt.atoms[coord.id()] = atom;
            terms.push_back(std::move(nt));
        }
    }
    return Expr::from_terms(e.space(), std::move(terms));
}

}  // namespace

Expr derivative(const Expr& e, Coord coord, int order) {
    if (order < 0) throw Error("negative derivative order");
    if (!coord.valid_in(e.space()))
        throw DimensionError("coordinate " + coord.name() + " not in space");
    Expr out = e;
    for (int i = 0; i < order; ++i)
        out = map_atom_pieces(out, coord, /*absent_is_zero=*/true, atom_derivative);
    return out;
}

Expr antiderivative(const Expr& e, Coord coord, int order) {
    if (order < 1) throw Error("antiderivative order must be positive");
    if (!coord.valid_in(e.space()))
        throw DimensionError("coordinate " + coord.name() + " not in space");
    Expr out = e;
    for (int i = 0; i < order; ++i)
        out = map_atom_pieces(out, coord, /*absent_is_zero=*/false,
                              atom_antiderivative);
    return out;
}

bool equals(const Expr& a, const Expr& b) { return a == b; }

bool is_zero(const Expr& e) { return e.is_zero(); }

std::optional<Coefficient> proportional(const Expr& a, const Expr& b) {
    require_same_space(a, b);
    if (b.is_zero()) throw Error("proportional: reference expression is zero");
    if (a.is_zero()) return Coefficient();
    if (a.terms().size() != b.terms().size()) return std::nullopt;

    // Scaling by a coefficient preserves the canonical term order, so the
    // candidate ratio must match the i-th terms pairwise.
    std::optional<Coefficient> ratio;
    for (std::size_t i = 0; i < a.terms().size(); ++i) {
        const Term& ta = a.terms()[i];
        const Term& tb = b.terms()[i];
        if (ta.atoms != tb.atoms) return std::nullopt;
        Coefficient r = ta.coeff / tb.coeff;
        if (ratio && !(*ratio == r)) return std::nullopt;
        ratio = r;
    }
    return ratio;
}

BigFloat eval(const Expr& e, const std::map<int, Rational>& point,
              const std::map<std::string, Rational>& param_values) {
    for (int s = 0; s < e.space().dims(); ++s) {
        Coord c = coord_of_slot(e.space(), s);
        if (!point.count(c.id()))
            throw EvalError("unbound coordinate " + c.name());
    }
    BigFloat total = 0;
    for (const Term& t : e.terms()) {
        Rational exact = t.coeff.value(param_values);
        BigFloat trans = 1;
        for (const auto& [coord, atom] : t.atoms) {
            const Rational& x = point.at(coord);
            if (atom.power > 0) exact *= rational_pow(x, atom.power);
            if (atom.exp_rate != 0) trans *= exp(to_bigfloat(atom.exp_rate * x));
            if (atom.trig == Trig::cos)
                trans *= cos(to_bigfloat(atom.freq * x));
            else if (atom.trig == Trig::sin)
                trans *= sin(to_bigfloat(atom.freq * x));
        }
        total += to_bigfloat(exact) * trans;
    }
    return total;
}

}  // namespace annihilant
