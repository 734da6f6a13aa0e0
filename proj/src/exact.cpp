#include "novikov_spectra/exact.hpp"

#include <cctype>

namespace spectra {

namespace {

bool valid_integer(std::string_view s)
{
    if (s.empty())
        return false;
    size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size())
        return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            return false;
    return true;
}

}  // namespace

Rational ratio(long n, long d)
{
    if (d == 0)
        throw DomainError("zero denominator");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

Rational parse_rational(std::string_view text)
{
    std::string s(text);
    auto slash = s.find('/');
    auto dot = s.find('.');
    if (slash != std::string::npos) {
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!valid_integer(num) || !valid_integer(den) || den[0] == '-' || den[0] == '+')
            throw InputError("parse", "malformed rational '" + s + "'");
        if (num[0] == '+')
            num.erase(0, 1);
        Integer n(num, 10), d(den, 10);
        if (d == 0)
            throw InputError("parse", "zero denominator in '" + s + "'");
        Rational q(n, d);
        q.canonicalize();
        return q;
    }
    if (dot != std::string::npos) {
        // Decimal literal, read exactly: "1.25" -> 5/4.
        std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
        bool neg = !ip.empty() && ip[0] == '-';
        if (!ip.empty() && (ip[0] == '-' || ip[0] == '+'))
            ip.erase(0, 1);
        if (ip.empty())
            ip = "0";
        if (!valid_integer(ip) || (!fp.empty() && !valid_integer(fp)) || ip[0] == '-' || (!fp.empty() && fp[0] == '-'))
            throw InputError("parse", "malformed decimal '" + s + "'");
        Integer den = 1;
        for (size_t i = 0; i < fp.size(); ++i)
            den *= 10;
        Rational q{Integer(ip + fp, 10), den};
        q.canonicalize();
        return neg ? Rational(-q) : q;
    }
    if (!valid_integer(s))
        throw InputError("parse", "malformed rational '" + s + "'");
    if (s[0] == '+')
        s.erase(0, 1);
    return Rational(Integer(s, 10));
}

std::string format_rational(const Rational& q)
{
    if (q.get_den() == 1)
        return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

const Rational& ExtReal::value() const
{
    if (kind_ != Kind::Finite)
        throw DomainError("value() of an infinite extended real");
    return value_;
}

bool operator==(const ExtReal& a, const ExtReal& b)
{
    if (a.kind_ != b.kind_)
        return false;
    return a.kind_ != ExtReal::Kind::Finite || a.value_ == b.value_;
}

std::strong_ordering operator<=>(const ExtReal& a, const ExtReal& b)
{
    auto rank = [](ExtReal::Kind k) { return k == ExtReal::Kind::NegInf ? 0 : k == ExtReal::Kind::Finite ? 1 : 2; };
    if (a.kind_ != b.kind_)
        return rank(a.kind_) <=> rank(b.kind_);
    if (a.kind_ != ExtReal::Kind::Finite)
        return std::strong_ordering::equal;
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

ExtReal operator+(const ExtReal& a, const ExtReal& b)
{
    if (a.is_finite() && b.is_finite())
        return ExtReal(Rational(a.value_ + b.value_));
    if ((a.is_neg_inf() && b.is_pos_inf()) || (a.is_pos_inf() && b.is_neg_inf()))
        throw DomainError("(-inf) + (+inf) is undefined");
    if (a.is_neg_inf() || b.is_neg_inf())
        return ExtReal::neg_inf();
    return ExtReal::pos_inf();
}

ExtReal operator-(const ExtReal& a)
{
    if (a.is_neg_inf())
        return ExtReal::pos_inf();
    if (a.is_pos_inf())
        return ExtReal::neg_inf();
    return ExtReal(Rational(-a.value_));
}

std::string ExtReal::to_string() const
{
    switch (kind_) {
    case Kind::NegInf: return "-inf";
    case Kind::PosInf: return "+inf";
    default: return format_rational(value_);
    }
}

ExtReal ExtReal::parse(std::string_view text)
{
    if (text == "-inf")
        return neg_inf();
    if (text == "+inf" || text == "inf")
        return pos_inf();
    return ExtReal(parse_rational(text));
}

ExtReal max(const ExtReal& a, const ExtReal& b) { return a < b ? b : a; }
ExtReal min(const ExtReal& a, const ExtReal& b) { return b < a ? b : a; }

}  // namespace spectra
