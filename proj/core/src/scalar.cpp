#include "vmodel/scalar.hpp"

#include "vmodel/errors.hpp"

#include <cctype>

namespace vmodel {

namespace {

bool valid_integer(std::string_view s) {
    std::size_t pos = 0;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
    if (pos == s.size()) return false;
    for (; pos < s.size(); ++pos)
        if (!std::isdigit(static_cast<unsigned char>(s[pos]))) return false;
    return true;
}

mpz_class parse_integer(std::string_view s) {
    if (!valid_integer(s)) throw ParseError("malformed integer '" + std::string(s) + "'");
    std::string digits(s);
    if (!digits.empty() && digits[0] == '+') digits.erase(0, 1);
    return mpz_class(digits, 10);
}

std::optional<mpz_class> exact_isqrt(const mpz_class& v) {
    if (sgn(v) < 0 || !mpz_perfect_square_p(v.get_mpz_t())) return std::nullopt;
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), v.get_mpz_t());
    return root;
}

}  // namespace

Rational::Rational(const mpz_class& num, const mpz_class& den) : q_(num, den) {
    if (den == 0) throw PreconditionError("rational with zero denominator");
    q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw PreconditionError("division by zero");
    q_ /= o.q_;
    return *this;
}

std::string Rational::str() const {
    if (is_integer()) return num().get_str();
    return num().get_str() + "/" + den().get_str();
}

Rational Rational::parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(text), 1);
    auto den_text = text.substr(slash + 1);
    if (!den_text.empty() && (den_text[0] == '+' || den_text[0] == '-'))
        throw ParseError("denominator must be unsigned in '" + std::string(text) + "'");
    mpz_class den = parse_integer(den_text);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return Rational(parse_integer(text.substr(0, slash)), den);
}

std::optional<Rational> Rational::sqrt() const {
    auto n = exact_isqrt(num());
    if (!n) return std::nullopt;
    auto d = exact_isqrt(den());
    if (!d) return std::nullopt;
    return Rational(*n, *d);
}

GaussRational GaussRational::inverse() const {
    if (is_zero()) throw PreconditionError("division by zero");
    Rational n = norm();
    return {re_ / n, -im_ / n};
}

GaussRational& GaussRational::operator+=(const GaussRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussRational& GaussRational::operator-=(const GaussRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussRational& GaussRational::operator*=(const GaussRational& o) {
    if (o.im_.is_zero()) {
        re_ *= o.re_;
        im_ *= o.re_;
        return *this;
    }
    Rational re = re_ * o.re_ - im_ * o.im_;
    Rational im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

GaussRational& GaussRational::operator/=(const GaussRational& o) { return *this *= o.inverse(); }

std::string GaussRational::str() const {
    if (im_.is_zero()) return re_.str();
    std::string imag;
    if (im_ == Rational(1))
        imag = "i";
    else if (im_ == Rational(-1))
        imag = "-i";
    else
        imag = im_.str() + "*i";
    if (re_.is_zero()) return imag;
    if (imag[0] == '-') return re_.str() + imag;
    return re_.str() + "+" + imag;
}

GaussRational GaussRational::parse(std::string_view text) {
    if (text.empty()) throw ParseError("empty scalar");
    std::optional<Rational> re;
    std::optional<Rational> im;
    std::size_t pos = 0;
    while (pos < text.size()) {
        // A term runs up to the next sign that is not the leading one.
        std::size_t end = pos + 1;
        while (end < text.size() && text[end] != '+' && text[end] != '-') ++end;
        std::string_view term = text.substr(pos, end - pos);
        pos = end;

        bool negative = false;
        std::string_view body = term;
        if (body[0] == '+' || body[0] == '-') {
            negative = body[0] == '-';
            body.remove_prefix(1);
        }
        if (body.empty()) throw ParseError("malformed scalar '" + std::string(text) + "'");

        bool imaginary = false;
        Rational value(1);
        if (body == "i") {
            imaginary = true;
        } else if (body.size() > 2 && body.substr(body.size() - 2) == "*i") {
            imaginary = true;
            value = Rational::parse(body.substr(0, body.size() - 2));
        } else {
            value = Rational::parse(body);
        }
        if (negative) value = -value;
        auto& slot = imaginary ? im : re;
        if (slot) throw ParseError("duplicate " + std::string(imaginary ? "imaginary" : "real") +
                                   " part in '" + std::string(text) + "'");
        slot = std::move(value);
    }
    return {re.value_or(Rational(0)), im.value_or(Rational(0))};
}

std::optional<GaussRational> GaussRational::sqrt() const {
    if (im_.is_zero()) {
        if (re_.sign() >= 0) {
            if (auto r = re_.sqrt()) return GaussRational(*r);
            return std::nullopt;
        }
        if (auto r = (-re_).sqrt()) return GaussRational(Rational(0), *r);
        return std::nullopt;
    }
    // (x + yi)^2 = a + bi  <=>  x^2 = (a + |z|)/2, y = b / (2x).
    auto modulus = norm().sqrt();
    if (!modulus) return std::nullopt;
    auto x = ((re_ + *modulus) / Rational(2)).sqrt();
    if (!x) return std::nullopt;
    Rational y = im_ / (Rational(2) * *x);
    return GaussRational(*x, y);
}

GaussRational pow(const GaussRational& base, unsigned exponent) {
    GaussRational result(1);
    GaussRational b = base;
    while (exponent) {
        if (exponent & 1u) result *= b;
        exponent >>= 1;
        if (exponent) b *= b;
    }
    return result;
}

}  // namespace vmodel
