#ifndef QUADFORGE_CRYPTO_HPP
#define QUADFORGE_CRYPTO_HPP

#include <utility>

#include "quadforge/classgroup.hpp"

namespace quadforge {

// Class-group Diffie-Hellman at desk scale. This is a pedagogical
// implementation: exponentiation is not constant-time, secrets are plain
// caller-supplied integers, and no side-channel hardening is attempted.
// Deployments would use discriminants of 64-byte length and secrets of at
// least 16 bytes; here the discriminant is capped so the group stays
// enumerable.

struct PublicParams {
    Int delta;              // system discriminant, < 0
    ClassElement generator; // reduced form of maximal order
    Int group_order_hint;   // h(delta) when enumerated, 0 otherwise
};

struct KeyPair {
    Int secret;               // exponent, >= 1
    ClassElement public_value; // generator^secret
};

/// Chooses the generator by exhaustive order computation over all reduced
/// forms: maximal order wins, ties go to the smallest (a, |b|, c) with
/// positive b preferred. |delta| above max_enum raises capacity_error.
PublicParams setup(const Int& delta, const Int& max_enum = Int(1'000'000));

KeyPair keygen(const PublicParams& params, const Int& secret);

/// pow(their_public, my_secret); both parties arrive at the same class.
ClassElement dh_shared(const PublicParams& params, const Int& my_secret,
                       const ClassElement& their_public);

/// Wire form (a, b) of the reduced representative; c = (b^2 - delta)/(4a).
std::pair<Int, Int> compress(const ClassElement& f);

/// Rebuilds the class from (a, b) and delta; rejects pairs whose c is not
/// integral or whose form is not reduced primitive positive definite.
ClassElement decompress(const std::pair<Int, Int>& pair, const Int& delta);

} // namespace quadforge

#endif
