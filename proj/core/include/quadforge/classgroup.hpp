#ifndef QUADFORGE_CLASSGROUP_HPP
#define QUADFORGE_CLASSGROUP_HPP

#include <iosfwd>
#include <vector>

#include "quadforge/forms.hpp"

namespace quadforge {

/// A proper equivalence class in Cl(delta), delta < 0, held as its unique
/// reduced, primitive, positive definite representative.
class ClassElement {
  public:
    /// Wraps a form that must already be reduced, primitive, positive definite.
    explicit ClassElement(BinaryForm reduced_form);

    const BinaryForm& form() const { return form_; }
    const Int& delta() const { return delta_; }

    bool operator==(const ClassElement& o) const { return form_ == o.form_; }
    bool operator<(const ClassElement& o) const { return form_ < o.form_; }

  private:
    BinaryForm form_;
    Int delta_;
};

std::ostream& operator<<(std::ostream& os, const ClassElement& f);

/// The class of any primitive positive definite form (reduces it).
ClassElement class_of(const BinaryForm& q);

/// Neutral element of Cl(delta): the class of [1, delta mod 2, ...].
ClassElement identity(const Int& delta);

/// Class of [a,-b,c]; composing with it yields the identity.
ClassElement inverse(const ClassElement& f);

/// Gauss composition of proper classes of the same discriminant.
ClassElement compose(const ClassElement& f, const ClassElement& g);

/// n-fold composition by square-and-multiply, pow(f, 0) = identity.
ClassElement pow(const ClassElement& f, const Int& n);

/// Least n >= 1 with pow(f, n) = identity; divides h(delta).
Int order_of(const ClassElement& f);

/// h(delta) by counting reduced forms.
Int class_number_enum(const Int& delta);

/// h(delta) by the finite character sum (1/delta) * sum (delta/n) * n,
/// n = 1 .. |delta|-1. Requires a fundamental delta < -4 whose character
/// really has conductor |delta|, i.e. delta/4 != 1 mod 4 when 4 | delta.
Int class_number_formula(const Int& delta);

/// Number of reduced forms whose class squares to the identity.
Int count_ambiguous(const Int& delta);

/// Number of classical (GL2) equivalence classes: (g+ + h+)/2 with
/// h+ = 2 h(delta) and g+ = 2 * count_ambiguous(delta) for delta < 0.
Int classical_class_count(const Int& delta);

struct GenusReport {
    Int g_plus;             // proper genus number
    Int g_geom;             // geometric genus number
    int odd_prime_divisors; // m in the two case formulas
};

/// Genus numbers of a positive non-square discriminant by Gauss's g+ formula
/// and the three-case g formula; the pair must satisfy g+ in {g, 2g}.
GenusReport genus_numbers(const Int& delta);

} // namespace quadforge

#endif
