#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pnhs {

using value_t = std::int64_t;
using Vector = std::vector<value_t>;
using Configuration = Vector;

// Errors

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
public:
  using Error::Error;
};

class ArithmeticOverflow : public Error {
public:
  ArithmeticOverflow() : Error("arithmetic overflow in vector arithmetic") {}
};

class NotEnabled : public Error {
public:
  NotEnabled(std::size_t position, std::size_t action, const std::string& what)
      : Error(what), position_(position), action_(action) {}
  std::size_t position() const { return position_; }
  std::size_t action() const { return action_; }

private:
  std::size_t position_;
  std::size_t action_;
};

// Checked arithmetic. Values are naturals in practice; overflow raises
// instead of wrapping.

inline value_t checked_add(value_t a, value_t b) {
  value_t r;
  if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow();
  return r;
}

inline value_t checked_sub(value_t a, value_t b) {
  value_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw ArithmeticOverflow();
  return r;
}

inline value_t checked_mul(value_t a, value_t b) {
  value_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow();
  return r;
}

// Vector helpers (componentwise, lengths must agree).

Vector add(const Vector& a, const Vector& b);
Vector sub(const Vector& a, const Vector& b);
Vector scale(const Vector& a, value_t k);
Vector zeros(std::size_t n);
Vector unit(std::size_t n, std::size_t i);
Vector concat(const Vector& a, const Vector& b);
bool leq(const Vector& a, const Vector& b);
bool is_zero(const Vector& a);
bool is_natural(const Vector& a);
value_t norm(const Vector& a);
std::string to_string(const Vector& a);

struct VectorHash {
  std::size_t operator()(const Vector& v) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (value_t x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

struct Action {
  Vector pre;
  Vector post;
  std::string name;

  Vector delta() const { return sub(post, pre); }
  bool operator==(const Action&) const = default;
};

/// A place/transition net given as a dimension plus an ordered list of
/// actions. Construction validates arities and name uniqueness.
class PetriNet {
public:
  explicit PetriNet(std::size_t dim);
  PetriNet(std::size_t dim, std::vector<Action> actions);

  std::size_t dim() const { return dim_; }
  const std::vector<Action>& actions() const { return actions_; }
  std::size_t size() const { return actions_.size(); }
  const Action& action(std::size_t i) const;

  /// Appends an action; an empty name is replaced by "a<index>".
  std::size_t add_action(Vector pre, Vector post, std::string name = {});
  std::optional<std::size_t> find(const std::string& name) const;

  bool operator==(const PetriNet&) const = default;

private:
  void validate(const Action& a) const;

  std::size_t dim_;
  std::vector<Action> actions_;
};

struct Trace {
  Configuration start;
  std::vector<std::size_t> steps;
  Configuration end;
};

bool enabled(const PetriNet& net, const Configuration& c, std::size_t i);
Configuration fire(const PetriNet& net, const Configuration& c, std::size_t i);
Trace fire_sequence(const PetriNet& net, const Configuration& c,
                    const std::vector<std::size_t>& seq);

/// Indices of the actions enabled in `c`, in declaration order.
std::vector<std::size_t> enabled_actions(const PetriNet& net, const Configuration& c);

struct BoundedReach {
  std::vector<Configuration> configurations;  // lexicographically sorted
  bool complete = false;
};

/// Breadth-first closure of {start}, storing at most `node_budget`
/// configurations. `complete` is true iff the frontier was exhausted.
BoundedReach reachable_set_bounded(const PetriNet& net, const Configuration& start,
                                   std::size_t node_budget);

/// Breadth-first search for a configuration satisfying `goal`. Returns the
/// witnessing configuration, std::nullopt if the closure was exhausted
/// without a hit, and sets `complete` accordingly.
std::optional<Configuration> search_bounded(const PetriNet& net, const Configuration& start,
                                            const std::function<bool(const Configuration&)>& goal,
                                            std::size_t node_budget, bool& complete);

}  // namespace pnhs
