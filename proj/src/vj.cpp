#include "pnhs/vj.hpp"

#include <algorithm>

namespace pnhs {

const char* to_string(Answer a) {
  switch (a) {
    case Answer::yes: return "yes";
    case Answer::no: return "no";
    case Answer::unknown: return "unknown";
  }
  return "?";
}

std::variant<Vector, Inconclusive> minimize(const Vector& x,
                                            const std::function<Answer(const Vector&)>& membership) {
  Vector cur = x;
  for (std::size_t i = 0; i < cur.size(); ++i) {
    value_t lo = 0, hi = cur[i];
    while (lo < hi) {
      value_t mid = lo + (hi - lo) / 2;
      Vector probe = cur;
      probe[i] = mid;
      Answer a = membership(probe);
      if (a == Answer::unknown) return Inconclusive{PartialVector::concrete(probe)};
      if (a == Answer::yes)
        hi = mid;
      else
        lo = mid + 1;
    }
    cur[i] = hi;
  }
  return cur;
}

namespace {

// Diagonal points beyond this are treated as an inconsistent oracle.
constexpr value_t diagonal_limit = 1 << 20;

}  // namespace

VjOutcome min_basis(const UpwardOracle& oracle, VjStats* stats) {
  VjStats local;
  VjStats& st = stats ? *stats : local;
  std::map<PartialVector, Answer> memo;
  auto ask = [&](const PartialVector& v) {
    if (auto it = memo.find(v); it != memo.end()) {
      ++st.cache_hits;
      return it->second;
    }
    ++st.oracle_calls;
    Answer a = oracle.query(v);
    memo.emplace(v, a);
    st.log.emplace_back(v, a);
    return a;
  };
  auto concrete = [&](const Vector& x) { return ask(PartialVector::concrete(x)); };

  MinBasis basis{oracle.dim, {}};
  while (true) {
    ++st.iterations;
    std::vector<PartialVector> boxes = complement_boxes(basis);
    std::sort(boxes.begin(), boxes.end());
    std::optional<PartialVector> hit;
    for (const auto& box : boxes) {
      // U is upward closed, so the box meets U iff its top corner
      // (bounded coordinates at their maxima) has an instance in U.
      Answer a = ask(box);
      if (a == Answer::unknown) return Inconclusive{box};
      if (a == Answer::yes) {
        hit = box;
        break;
      }
    }
    if (!hit) return basis;

    std::optional<Vector> member;
    for (value_t n = 0; !member; ++n) {
      if (n > diagonal_limit) throw Error("oracle answered yes on " + hit->to_string() +
                                          " but no diagonal instance was accepted");
      Vector x = hit->instantiate(n);
      Answer a = concrete(x);
      if (a == Answer::unknown) return Inconclusive{PartialVector::concrete(x)};
      if (a == Answer::yes) member = std::move(x);
    }
    auto m = minimize(*member, concrete);
    if (auto* inc = std::get_if<Inconclusive>(&m)) return *inc;
    basis.elements.push_back(std::get<Vector>(m));
    std::sort(basis.elements.begin(), basis.elements.end());
  }
}

}  // namespace pnhs
