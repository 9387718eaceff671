#ifndef QUADFORGE_ERRORS_HPP
#define QUADFORGE_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace quadforge {

// Precondition violations on mathematical inputs raise std::domain_error,
// parse and wire-format problems raise std::invalid_argument. The classes
// below cover the remaining failure modes that callers may want to catch
// separately.

/// An iterative solver exhausted its iteration budget.
class convergence_error : public std::runtime_error {
  public:
    convergence_error(const std::string& what, std::vector<double> last_iterate,
                      long iterations)
        : std::runtime_error(what), last_iterate_(std::move(last_iterate)),
          iterations_(iterations)
    {
    }

    const std::vector<double>& last_iterate() const { return last_iterate_; }
    long iterations() const { return iterations_; }

  private:
    std::vector<double> last_iterate_;
    long iterations_;
};

/// The affine map is not a contraction (kappa >= 1).
class contraction_error : public std::domain_error {
  public:
    explicit contraction_error(const std::string& what) : std::domain_error(what) {}
};

/// Input exceeds a desk-scale capacity bound (enumeration or trial-division cap).
class capacity_error : public std::runtime_error {
  public:
    explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

/// Matrix rank is below what the operation requires; carries the detected rank.
class rank_error : public std::runtime_error {
  public:
    rank_error(const std::string& what, int detected_rank)
        : std::runtime_error(what), rank_(detected_rank)
    {
    }

    int detected_rank() const { return rank_; }

  private:
    int rank_;
};

} // namespace quadforge

#endif
