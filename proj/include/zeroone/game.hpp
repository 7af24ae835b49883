#ifndef ZEROONE_GAME_HPP
#define ZEROONE_GAME_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zeroone/atoms.hpp"
#include "zeroone/formula.hpp"
#include "zeroone/semiring.hpp"

namespace zeroone {

struct GameConfig {
  bool memo = true;
  std::uint64_t work_limit = std::uint64_t{1} << 26;
};

/// f_ψ[ρ] over a finite min-max semiring, computed without building f_ψ.
/// Standard quantifiers are handled natively by substitution branches.
/// `scope` names the variables x1..xk valued by ρ (default: free variables).
Value eval_game(const Formula& f, const AtomicType& rho, const GameConfig& cfg = {},
                const std::optional<std::vector<std::string>>& scope = {});

/// Whether f_ψ[ρ] = c, by the alternating guess-and-challenge procedure
/// played out as an exhaustive AND/OR search.
bool decide(const Formula& f, const AtomicType& rho, const Value& c, const GameConfig& cfg = {},
            const std::optional<std::vector<std::string>>& scope = {});

}  // namespace zeroone

#endif  // ZEROONE_GAME_HPP
