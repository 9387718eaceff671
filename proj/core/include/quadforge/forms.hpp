#ifndef QUADFORGE_FORMS_HPP
#define QUADFORGE_FORMS_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "quadforge/intarith.hpp"

namespace quadforge {

using Rat = boost::multiprecision::cpp_rational;

/// Integral binary quadratic form [a,b,c] = a*x^2 + b*x*y + c*y^2.
struct BinaryForm {
    Int a, b, c;

    bool operator==(const BinaryForm&) const = default;
    bool is_zero() const { return a == 0 && b == 0 && c == 0; }
};

/// Lexicographic order on (a, b, c).
bool operator<(const BinaryForm& p, const BinaryForm& q);

std::ostream& operator<<(std::ostream& os, const BinaryForm& q);

/// Text syntax "[a,b,c]" with optional whitespace and signed decimal integers.
BinaryForm parse_form(std::string_view text);
std::string to_string(const BinaryForm& q);

/// Row-wise 2x2 integer matrix ((r,s),(t,u)) acting on forms from the right.
struct IntMat2 {
    Int r, s, t, u;

    static IntMat2 identity() { return {1, 0, 0, 1}; }
    Int det() const { return r * u - s * t; }

    bool operator==(const IntMat2&) const = default;
    IntMat2 operator*(const IntMat2& o) const
    {
        return {r * o.r + s * o.t, r * o.s + s * o.u,
                t * o.r + u * o.t, t * o.s + u * o.u};
    }
};

std::ostream& operator<<(std::ostream& os, const IntMat2& m);

enum class Definiteness { positive_definite, negative_definite, indefinite, degenerate };

Int discriminant(const BinaryForm& q);

struct Content {
    Int gcd;
    bool primitive;
};

Content content(const BinaryForm& q);

Int evaluate(const BinaryForm& q, const Int& x, const Int& y);

/// Substitution action: act(q, M)(x, y) = q(r*x + s*y, t*x + u*y), det M = +-1.
/// Discriminant and content are invariant.
BinaryForm act(const BinaryForm& q, const IntMat2& m);

struct TransformedForm {
    BinaryForm form;
    IntMat2 transform; // form == act(input, transform)
};

/// Shift b into (-a, a] via ((1,n),(0,1)) with n = floor((a-b)/(2a)); needs a > 0.
TransformedForm normalize(const BinaryForm& q);

/// True when -a < b <= a < c, or 0 <= b <= a = c. Needs discriminant < 0, a > 0.
bool is_reduced(const BinaryForm& q);

/// The unique reduced representative of the proper class of a primitive
/// positive definite form, with the SL2 transform that reaches it.
TransformedForm reduce(const BinaryForm& q);

/// All primitive reduced forms of discriminant delta < 0, sorted by (a, b, c).
std::vector<BinaryForm> enumerate_reduced(const Int& delta);

Definiteness classify_definiteness(const BinaryForm& q);

/// Bounded search for a coprime pair (x, y), |x|,|y| <= bound, with q(x,y) = m.
/// Candidates are scanned by growing |x|+|y|, larger |x| and positive signs
/// first, so the reported witness is deterministic. Absence within the bound
/// does not certify non-representability.
std::optional<std::pair<Int, Int>> represents_primitively(const BinaryForm& q,
                                                          const Int& m,
                                                          const Int& bound);

/// Symmetric 2x2 matrix over the rationals (Gram matrix of a binary form).
struct RatSym2 {
    Rat a11, a12, a22; // entry(1,2) == entry(2,1) by construction

    bool is_zero() const { return a11 == 0 && a12 == 0 && a22 == 0; }
    Rat det() const { return a11 * a22 - a12 * a12; }
};

/// Exact Gram matrix (a, b/2; b/2, c) of a form.
RatSym2 gram_matrix(const BinaryForm& q);

/// Geometric (twisted) equivalence over Q for 2x2 symmetric matrices:
/// holds exactly when the determinants agree.
bool geometric_equivalent_2x2(const RatSym2& p, const RatSym2& q);

} // namespace quadforge

#endif
