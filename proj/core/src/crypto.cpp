#include "quadforge/crypto.hpp"
#include "quadforge/errors.hpp"

#include <stdexcept>
#include <tuple>

namespace quadforge {

namespace {

    // Tie-break key for generator selection.
    auto selection_key(const BinaryForm& q)
    {
        return std::make_tuple(q.a, Int(boost::multiprecision::abs(q.b)), q.c, q.b < 0);
    }

} // namespace

PublicParams setup(const Int& delta, const Int& max_enum)
{
    if (delta >= 0)
        throw std::domain_error("setup: delta must be negative");
    if (-delta > max_enum)
        throw capacity_error("setup: |delta| exceeds the enumeration cap");

    auto reduced = enumerate_reduced(delta);
    Int h(reduced.size());

    ClassElement best = identity(delta);
    Int best_order = 1;
    for (const BinaryForm& q : reduced) {
        ClassElement f(q);
        Int ord = order_of(f);
        if (ord > best_order ||
            (ord == best_order && selection_key(f.form()) < selection_key(best.form()))) {
            best = f;
            best_order = ord;
        }
    }
    return {delta, best, h};
}

KeyPair keygen(const PublicParams& params, const Int& secret)
{
    if (secret < 1)
        throw std::domain_error("keygen: secret must be >= 1");
    return {secret, pow(params.generator, secret)};
}

ClassElement dh_shared(const PublicParams& params, const Int& my_secret,
                       const ClassElement& their_public)
{
    if (my_secret < 1)
        throw std::domain_error("dh_shared: secret must be >= 1");
    if (their_public.delta() != params.delta)
        throw std::domain_error("dh_shared: discriminant mismatch");
    return pow(their_public, my_secret);
}

std::pair<Int, Int> compress(const ClassElement& f)
{
    return {f.form().a, f.form().b};
}

ClassElement decompress(const std::pair<Int, Int>& pair, const Int& delta)
{
    const auto& [a, b] = pair;
    if (a <= 0)
        throw std::invalid_argument("decompress: leading coefficient must be positive");
    Int num = b * b - delta;
    if (num % (4 * a) != 0)
        throw std::invalid_argument("decompress: (b^2 - delta)/(4a) is not integral");
    BinaryForm q{a, b, num / (4 * a)};
    if (discriminant(q) >= 0 || !content(q).primitive || !is_reduced(q))
        throw std::invalid_argument("decompress: pair does not name a reduced primitive form");
    return ClassElement(q);
}

} // namespace quadforge
