#pragma once

#include <stdexcept>
#include <string>

namespace qgame {

/// Constant game a=b=c=d: no normalized representative exists.
struct DegenerateGame : std::runtime_error {
    explicit DegenerateGame(const std::string& what = "degenerate game: a=b=c=d")
        : std::runtime_error(what) {}
};

/// Chi matrix violating hermiticity, positivity or completeness.
struct InvalidChi : std::runtime_error {
    explicit InvalidChi(const std::string& what) : std::runtime_error(what) {}
};

/// The 3x3 trace formula divides by G_AB; thrown when |G_AB| is below threshold.
struct SingularFormulation : std::runtime_error {
    explicit SingularFormulation(const std::string& what = "formula singular: |G_AB| ~ 0")
        : std::runtime_error(what) {}
};

}  // namespace qgame
