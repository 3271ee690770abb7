#include "annihilant/coefficient.hpp"

#include <sstream>

#include "annihilant/errors.hpp"

namespace annihilant {

namespace {

void drop_zero_exponents(std::map<std::string, int>& params) {
    for (auto it = params.begin(); it != params.end();) {
        if (it->second == 0)
            it = params.erase(it);
        else
            ++it;
    }
}

}  // namespace

Coefficient::Coefficient(const Rational& r, std::map<std::string, int> params)
    : rat_(r), params_(std::move(params)) {
    rat_.canonicalize();
    drop_zero_exponents(params_);
    if (rat_ == 0) params_.clear();
}

Coefficient Coefficient::param(const std::string& name, int exponent) {
    return Coefficient(Rational(1), {{name, exponent}});
}

Coefficient Coefficient::operator-() const {
    Coefficient out = *this;
    out.rat_ = -out.rat_;
    return out;
}

Coefficient operator*(const Coefficient& a, const Coefficient& b) {
    if (a.is_zero() || b.is_zero()) return Coefficient();
    std::map<std::string, int> params = a.params_;
    for (const auto& [name, e] : b.params_) params[name] += e;
    drop_zero_exponents(params);
    return Coefficient(a.rat_ * b.rat_, std::move(params));
}

Coefficient operator/(const Coefficient& a, const Coefficient& b) {
    return a * b.inverse();
}

Coefficient Coefficient::inverse() const {
    if (is_zero()) throw EvalError("division by the zero coefficient");
    std::map<std::string, int> params = params_;
    for (auto& [name, e] : params) e = -e;
    return Coefficient(Rational(1) / rat_, std::move(params));
}

Coefficient Coefficient::pow(int e) const {
    if (e == 0) return Coefficient::one();
    if (is_zero()) {
        if (e < 0) throw EvalError("zero coefficient raised to a negative power");
        return Coefficient();
    }
    std::map<std::string, int> params = params_;
    for (auto& [name, exp] : params) exp *= e;
    return Coefficient(rational_pow(rat_, e), std::move(params));
}

Rational Coefficient::value(const std::map<std::string, Rational>& param_values) const {
    Rational out = rat_;
    for (const auto& [name, e] : params_) {
        auto it = param_values.find(name);
        if (it == param_values.end())
            throw EvalError("unbound parameter '" + name + "'");
        out *= rational_pow(it->second, e);
    }
    return out;
}

std::string Coefficient::str() const {
    std::ostringstream os;
    os << rat_.get_str();
    for (const auto& [name, e] : params_) {
        os << "*" << name;
        if (e != 1) os << "^" << e;
    }
    return os.str();
}

int compare_params(const std::map<std::string, int>& a,
                   const std::map<std::string, int>& b) {
    auto ia = a.begin();
    auto ib = b.begin();
    for (; ia != a.end() && ib != b.end(); ++ia, ++ib) {
        if (ia->first != ib->first) return ia->first < ib->first ? -1 : 1;
        if (ia->second != ib->second) return ia->second > ib->second ? -1 : 1;
    }
    if (ia != a.end()) return 1;
    if (ib != b.end()) return -1;
    return 0;
}

}  // namespace annihilant
