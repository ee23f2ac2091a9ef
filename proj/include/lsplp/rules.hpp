#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>

#include "lsplp/errors.hpp"

namespace lsplp {

enum class RuleKind { LeastIndex, GreatestImprovement, RandomEdge, FirstImproving };

struct ImprovementRule {
  RuleKind kind = RuleKind::LeastIndex;
  std::uint64_t seed = 0;  // used by RandomEdge only

  bool operator==(const ImprovementRule&) const = default;
};

inline std::string_view to_string(RuleKind k) {
  switch (k) {
    case RuleKind::LeastIndex: return "least-index";
    case RuleKind::GreatestImprovement: return "greatest";
    case RuleKind::RandomEdge: return "random";
    case RuleKind::FirstImproving: return "first";
  }
  return "?";
}

inline RuleKind parse_rule(std::string_view s) {
  if (s == "least-index") return RuleKind::LeastIndex;
  if (s == "greatest") return RuleKind::GreatestImprovement;
  if (s == "random") return RuleKind::RandomEdge;
  if (s == "first") return RuleKind::FirstImproving;
  throw ValidationError("unknown rule '" + std::string(s) + "'");
}

// Picks one candidate per iteration. Strategy improvement and the simplex
// method each own one selector built from the same rule, and both call
// select() exactly once per iteration with the candidate edge ids sorted
// ascending, so a shared seed yields the same choices on both sides.
//
//   LeastIndex      smallest edge id.
//   Greatest        largest score; ties go to the smaller edge id.
//   RandomEdge      candidates[g() % size] with g = std::mt19937_64(seed),
//                   one draw per iteration. The engine's output sequence is
//                   fixed by the C++ standard, so runs are reproducible
//                   across platforms.
//   FirstImproving  cyclic scan: the first candidate with id greater than
//                   the previously selected one, wrapping around; the scan
//                   starts at the smallest id.
class RuleSelector {
 public:
  explicit RuleSelector(ImprovementRule rule) : rule_(rule), rng_(rule.seed) {}

  const ImprovementRule& rule() const noexcept { return rule_; }

  // candidates: ascending edge ids, nonempty. score(i) is only consulted
  // by GreatestImprovement and must order candidates[i].
  template <class Score>
  int select(std::span<const int> candidates, Score&& score) {
    if (candidates.empty()) throw InternalError("rule asked to select from no candidates");
    int pick = candidates.front();
    switch (rule_.kind) {
      case RuleKind::LeastIndex:
        break;
      case RuleKind::GreatestImprovement: {
        std::size_t best = 0;
        auto best_score = score(0);
        for (std::size_t i = 1; i < candidates.size(); ++i) {
          auto s = score(i);
          if (s > best_score) {
            best = i;
            best_score = std::move(s);
          }
        }
        pick = candidates[best];
        break;
      }
      case RuleKind::RandomEdge:
        pick = candidates[static_cast<std::size_t>(rng_() % candidates.size())];
        break;
      case RuleKind::FirstImproving:
        if (last_)
          for (int c : candidates)
            if (c > *last_) {
              pick = c;
              break;
            }
        break;
    }
    last_ = pick;
    return pick;
  }

 private:
  ImprovementRule rule_;
  std::mt19937_64 rng_;
  std::optional<int> last_;
};

}  // namespace lsplp
