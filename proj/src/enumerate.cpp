#include "bes/enumerate.hpp"

#include <algorithm>

#include "bes/errors.hpp"

namespace bes {

namespace {

constexpr std::size_t kEnumerationGuard = 300000;

std::vector<Formula> leaves(std::span<const std::string> contents) {
  std::vector<Formula> out;
  for (const auto& c : contents) {
    out.push_back(Formula::lit(c, Polarity::Assert));
    out.push_back(Formula::lit(c, Polarity::Deny));
  }
  return out;
}

void guard(std::size_t n) {
  if (n > kEnumerationGuard)
    throw ResourceError("formula enumeration exceeds " + std::to_string(kEnumerationGuard) +
                        " formulae; lower the depth");
}

}  // namespace

std::vector<Formula> formulae_by_weight(std::span<const std::string> contents,
                                        unsigned max_weight) {
  // strata[w] = all formulae of weight exactly w
  std::vector<std::vector<Formula>> strata(max_weight + 1);
  strata[0] = leaves(contents);
  std::size_t total = strata[0].size();
  for (unsigned w = 1; w <= max_weight; ++w) {
    auto& layer = strata[w];
    if (w == 1) {
      layer.push_back(Formula::bot());
      layer.push_back(Formula::top());
    }
    for (unsigned wl = 0; wl + 1 <= w; ++wl) {
      const unsigned wr = w - 1 - wl;
      for (const Formula& l : strata[wl])
        for (const Formula& r : strata[wr]) {
          layer.push_back(Formula::conj(l, r));
          layer.push_back(Formula::disj(l, r));
          layer.push_back(Formula::imp(l, r));
        }
    }
    total += layer.size();
    guard(total);
  }
  std::vector<Formula> out;
  out.reserve(total);
  for (auto& layer : strata) {
    std::sort(layer.begin(), layer.end(),
              [](const Formula& a, const Formula& b) { return print(a) < print(b); });
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

unsigned depth_of(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Imp:
      return 1 + std::max(depth_of(f.lhs()), depth_of(f.rhs()));
    default:
      return 1;
  }
}

std::vector<Formula> formulae_by_depth(std::span<const std::string> contents,
                                       unsigned max_depth) {
  std::vector<Formula> pool = leaves(contents);
  pool.push_back(Formula::bot());
  pool.push_back(Formula::top());
  for (unsigned d = 2; d <= max_depth; ++d) {
    const std::size_t prev_size = pool.size();
    guard(prev_size * prev_size * 3 + prev_size);
    std::vector<Formula> next = pool;
    for (std::size_t i = 0; i < prev_size; ++i)
      for (std::size_t j = 0; j < prev_size; ++j) {
        next.push_back(Formula::conj(pool[i], pool[j]));
        next.push_back(Formula::disj(pool[i], pool[j]));
        next.push_back(Formula::imp(pool[i], pool[j]));
      }
    std::sort(next.begin(), next.end(), formula_less);
    next.erase(std::unique(next.begin(), next.end()), next.end());
    pool = std::move(next);
  }
  std::sort(pool.begin(), pool.end(), formula_less);
  return pool;
}

Formula random_formula(Rng& rng, std::span<const std::string> contents, unsigned max_depth) {
  if (max_depth <= 1 || rng.chance(1, 4)) {
    // leaf: mostly literals, occasionally a constant
    const auto roll = rng.below(10);
    if (roll == 0 || contents.empty()) return roll % 2 ? Formula::top() : Formula::bot();
    if (roll == 1) return Formula::top();
    const auto ci = rng.below(contents.size());
    return Formula::lit(contents[ci], rng.chance(1, 2) ? Polarity::Assert : Polarity::Deny);
  }
  Formula l = random_formula(rng, contents, max_depth - 1);
  Formula r = random_formula(rng, contents, max_depth - 1);
  switch (rng.below(3)) {
    case 0:
      return Formula::conj(std::move(l), std::move(r));
    case 1:
      return Formula::disj(std::move(l), std::move(r));
    default:
      return Formula::imp(std::move(l), std::move(r));
  }
}

std::vector<std::string> default_contents(unsigned k) {
  std::vector<std::string> out;
  for (unsigned i = 0; i < k; ++i) {
    std::string name;
    name += static_cast<char>('a' + i % 26);
    if (i >= 26) name += std::to_string(i / 26);
    out.push_back(std::move(name));
  }
  return out;
}

}  // namespace bes
