#include "quadforge/forms.hpp"
#include "quadforge/errors.hpp"

#include <cctype>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace quadforge {

bool operator<(const BinaryForm& p, const BinaryForm& q)
{
    return std::tie(p.a, p.b, p.c) < std::tie(q.a, q.b, q.c);
}

std::ostream& operator<<(std::ostream& os, const BinaryForm& q)
{
    return os << '[' << q.a << ',' << q.b << ',' << q.c << ']';
}

std::ostream& operator<<(std::ostream& os, const IntMat2& m)
{
    return os << "((" << m.r << ',' << m.s << "),(" << m.t << ',' << m.u << "))";
}

std::string to_string(const BinaryForm& q)
{
    std::ostringstream os;
    os << q;
    return os.str();
}

namespace {

    void skip_ws(std::string_view& s)
    {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
            s.remove_prefix(1);
    }

    bool take(std::string_view& s, char c)
    {
        skip_ws(s);
        if (s.empty() || s.front() != c)
            return false;
        s.remove_prefix(1);
        return true;
    }

    Int take_int(std::string_view& s)
    {
        skip_ws(s);
        bool negative = false;
        if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
            negative = s.front() == '-';
            s.remove_prefix(1);
        }
        std::size_t len = 0;
        while (len < s.size() && std::isdigit(static_cast<unsigned char>(s[len])))
            ++len;
        if (len == 0)
            throw std::invalid_argument("expected an integer");
        Int v(std::string(s.substr(0, len)));
        s.remove_prefix(len);
        return negative ? Int(-v) : v;
    }

} // namespace

BinaryForm parse_form(std::string_view text)
{
    std::string_view s = text;
    if (!take(s, '['))
        throw std::invalid_argument("form syntax is \"[a,b,c]\"");
    BinaryForm q;
    q.a = take_int(s);
    if (!take(s, ','))
        throw std::invalid_argument("form syntax is \"[a,b,c]\"");
    q.b = take_int(s);
    if (!take(s, ','))
        throw std::invalid_argument("form syntax is \"[a,b,c]\"");
    q.c = take_int(s);
    if (!take(s, ']'))
        throw std::invalid_argument("form syntax is \"[a,b,c]\"");
    skip_ws(s);
    if (!s.empty())
        throw std::invalid_argument("trailing characters after form");
    return q;
}

namespace {

    void require_nonzero(const BinaryForm& q, const char* who)
    {
        if (q.is_zero())
            throw std::domain_error(std::string(who) + ": zero form");
    }

} // namespace

Int discriminant(const BinaryForm& q)
{
    require_nonzero(q, "discriminant");
    return q.b * q.b - 4 * q.a * q.c;
}

Content content(const BinaryForm& q)
{
    require_nonzero(q, "content");
    Int g = boost::multiprecision::gcd(boost::multiprecision::gcd(q.a, q.b), q.c);
    return {g, g == 1};
}

Int evaluate(const BinaryForm& q, const Int& x, const Int& y)
{
    return q.a * x * x + q.b * x * y + q.c * y * y;
}

BinaryForm act(const BinaryForm& q, const IntMat2& m)
{
    Int d = m.det();
    if (d != 1 && d != -1)
        throw std::domain_error("act: transform must have determinant +-1");
    BinaryForm out;
    out.a = evaluate(q, m.r, m.t);
    out.b = 2 * q.a * m.r * m.s + q.b * (m.r * m.u + m.s * m.t) + 2 * q.c * m.t * m.u;
    out.c = evaluate(q, m.s, m.u);
    return out;
}

TransformedForm normalize(const BinaryForm& q)
{
    require_nonzero(q, "normalize");
    if (q.a <= 0)
        throw std::domain_error("normalize: leading coefficient must be positive");
    Int n = div_floor(q.a - q.b, 2 * q.a);
    IntMat2 m{1, n, 0, 1};
    return {act(q, m), m};
}

bool is_reduced(const BinaryForm& q)
{
    require_nonzero(q, "is_reduced");
    if (discriminant(q) >= 0 || q.a <= 0)
        throw std::domain_error("is_reduced: form must be positive definite");
    if (-q.a < q.b && q.b <= q.a && q.a < q.c)
        return true;
    return 0 <= q.b && q.b <= q.a && q.a == q.c;
}

TransformedForm reduce(const BinaryForm& q)
{
    require_nonzero(q, "reduce");
    if (discriminant(q) >= 0 || q.a <= 0)
        throw std::domain_error("reduce: form must be positive definite");
    if (!content(q).primitive)
        throw std::domain_error("reduce: form must be primitive");

    // Replace the form by the normalisation of [c,-b,a] until reduced.
    static const IntMat2 flip{0, -1, 1, 0}; // act(q, flip) = [c,-b,a]
    BinaryForm cur = q;
    IntMat2 acc = IntMat2::identity();
    for (int guard = 0; !is_reduced(cur); ++guard) {
        if (guard > 1'000'000)
            throw std::logic_error("reduce: loop bound exceeded");
        cur = act(cur, flip);
        acc = acc * flip;
        auto norm = normalize(cur);
        cur = norm.form;
        acc = acc * norm.transform;
    }
    return {cur, acc};
}

std::vector<BinaryForm> enumerate_reduced(const Int& delta)
{
    if (delta >= 0)
        throw std::domain_error("enumerate_reduced: delta must be negative");
    Int m4 = mod_floor(delta, 4);
    if (m4 != 0 && m4 != 1)
        throw std::domain_error("enumerate_reduced: delta must be 0 or 1 mod 4");

    // |b| <= a <= c forces 3a^2 <= |delta|.
    std::vector<BinaryForm> out;
    Int third = -delta / 3;
    Int a_max = boost::multiprecision::sqrt(third);
    for (Int a = 1; a <= a_max; ++a) {
        for (Int b = -a; b <= a; ++b) {
            Int num = b * b - delta;
            if (num % (4 * a) != 0)
                continue;
            BinaryForm q{a, b, num / (4 * a)};
            if (q.c < q.a)
                continue;
            if (!is_reduced(q) || !content(q).primitive)
                continue;
            out.push_back(q);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

Definiteness classify_definiteness(const BinaryForm& q)
{
    Int d = discriminant(q);
    if (d == 0)
        return Definiteness::degenerate;
    if (d > 0)
        return Definiteness::indefinite;
    return q.a > 0 ? Definiteness::positive_definite : Definiteness::negative_definite;
}

std::optional<std::pair<Int, Int>> represents_primitively(const BinaryForm& q,
                                                          const Int& m,
                                                          const Int& bound)
{
    if (bound < 1)
        throw std::domain_error("represents_primitively: bound must be >= 1");
    auto try_pair = [&](const Int& x, const Int& y) {
        return boost::multiprecision::gcd(x, y) == 1 && evaluate(q, x, y) == m;
    };
    for (Int sum = 1; sum <= 2 * bound; ++sum) {
        Int ax_hi = sum < bound ? sum : bound;
        Int ax_lo = sum - bound > 0 ? sum - bound : Int(0);
        for (Int ax = ax_hi; ax >= ax_lo; --ax) {
            Int ay = sum - ax;
            for (int sx : {+1, -1}) {
                if (ax == 0 && sx < 0)
                    continue;
                for (int sy : {+1, -1}) {
                    if (ay == 0 && sy < 0)
                        continue;
                    Int x = sx * ax, y = sy * ay;
                    if (try_pair(x, y))
                        return std::make_pair(x, y);
                }
            }
        }
    }
    return std::nullopt;
}

RatSym2 gram_matrix(const BinaryForm& q)
{
    return {Rat(q.a), Rat(q.b) / 2, Rat(q.c)};
}

bool geometric_equivalent_2x2(const RatSym2& p, const RatSym2& q)
{
    if (p.is_zero() || q.is_zero())
        throw std::domain_error("geometric_equivalent_2x2: zero matrix");
    return p.det() == q.det();
}

} // namespace quadforge
