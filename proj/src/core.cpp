#include "pnhs/core.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_set>

namespace pnhs {

namespace {

void require_same_length(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) {
    throw DimensionMismatch("vector lengths differ: " + std::to_string(a.size()) + " vs " +
                            std::to_string(b.size()));
  }
}

}  // namespace

Vector add(const Vector& a, const Vector& b) {
  require_same_length(a, b);
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_add(a[i], b[i]);
  return r;
}

Vector sub(const Vector& a, const Vector& b) {
  require_same_length(a, b);
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_sub(a[i], b[i]);
  return r;
}

Vector scale(const Vector& a, value_t k) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_mul(a[i], k);
  return r;
}

Vector zeros(std::size_t n) { return Vector(n, 0); }

Vector unit(std::size_t n, std::size_t i) {
  Vector r(n, 0);
  r.at(i) = 1;
  return r;
}

Vector concat(const Vector& a, const Vector& b) {
  Vector r(a);
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

bool leq(const Vector& a, const Vector& b) {
  require_same_length(a, b);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

bool is_zero(const Vector& a) {
  return std::all_of(a.begin(), a.end(), [](value_t x) { return x == 0; });
}

bool is_natural(const Vector& a) {
  return std::all_of(a.begin(), a.end(), [](value_t x) { return x >= 0; });
}

value_t norm(const Vector& a) {
  value_t s = 0;
  for (value_t x : a) s = checked_add(s, x);
  return s;
}

std::string to_string(const Vector& a) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
  os << ')';
  return os.str();
}

PetriNet::PetriNet(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw DimensionMismatch("net dimension must be at least 1");
}

PetriNet::PetriNet(std::size_t dim, std::vector<Action> actions) : PetriNet(dim) {
  for (auto& a : actions) add_action(std::move(a.pre), std::move(a.post), std::move(a.name));
}

const Action& PetriNet::action(std::size_t i) const {
  if (i >= actions_.size())
    throw IndexOutOfRange("action index " + std::to_string(i) + " out of range");
  return actions_[i];
}

void PetriNet::validate(const Action& a) const {
  if (a.pre.size() != dim_ || a.post.size() != dim_)
    throw DimensionMismatch("action '" + a.name + "' does not have arity " +
                            std::to_string(dim_));
  if (!is_natural(a.pre) || !is_natural(a.post))
    throw Error("action '" + a.name + "' has a negative entry");
  if (find(a.name)) throw Error("duplicate action name '" + a.name + "'");
}

std::size_t PetriNet::add_action(Vector pre, Vector post, std::string name) {
  if (name.empty()) name = "a" + std::to_string(actions_.size());
  Action a{std::move(pre), std::move(post), std::move(name)};
  validate(a);
  actions_.push_back(std::move(a));
  return actions_.size() - 1;
}

std::optional<std::size_t> PetriNet::find(const std::string& name) const {
  for (std::size_t i = 0; i < actions_.size(); ++i)
    if (actions_[i].name == name) return i;
  return std::nullopt;
}

bool enabled(const PetriNet& net, const Configuration& c, std::size_t i) {
  return leq(net.action(i).pre, c);
}

Configuration fire(const PetriNet& net, const Configuration& c, std::size_t i) {
  const Action& a = net.action(i);
  if (c.size() != net.dim()) throw DimensionMismatch("configuration has wrong dimension");
  if (!leq(a.pre, c))
    throw NotEnabled(0, i, "action '" + a.name + "' not enabled in " + to_string(c));
  Configuration r(c.size());
  for (std::size_t p = 0; p < c.size(); ++p) r[p] = checked_add(c[p] - a.pre[p], a.post[p]);
  return r;
}

Trace fire_sequence(const PetriNet& net, const Configuration& c,
                    const std::vector<std::size_t>& seq) {
  Trace t{c, seq, c};
  for (std::size_t pos = 0; pos < seq.size(); ++pos) {
    if (!enabled(net, t.end, seq[pos]))
      throw NotEnabled(pos, seq[pos],
                       "action '" + net.action(seq[pos]).name + "' not enabled at step " +
                           std::to_string(pos) + " in " + to_string(t.end));
    t.end = fire(net, t.end, seq[pos]);
  }
  return t;
}

std::vector<std::size_t> enabled_actions(const PetriNet& net, const Configuration& c) {
  std::vector<std::size_t> r;
  for (std::size_t i = 0; i < net.size(); ++i)
    if (leq(net.actions()[i].pre, c)) r.push_back(i);
  return r;
}

BoundedReach reachable_set_bounded(const PetriNet& net, const Configuration& start,
                                   std::size_t node_budget) {
  if (node_budget == 0) throw Error("node budget must be positive");
  std::unordered_set<Configuration, VectorHash> seen{start};
  std::deque<Configuration> frontier{start};
  BoundedReach out;
  out.complete = true;
  while (!frontier.empty() && out.complete) {
    Configuration c = std::move(frontier.front());
    frontier.pop_front();
    for (std::size_t i = 0; i < net.size(); ++i) {
      if (!leq(net.actions()[i].pre, c)) continue;
      Configuration next = fire(net, c, i);
      if (seen.contains(next)) continue;
      if (seen.size() >= node_budget) {
        out.complete = false;
        break;
      }
      seen.insert(next);
      frontier.push_back(std::move(next));
    }
  }
  out.configurations.assign(seen.begin(), seen.end());
  std::sort(out.configurations.begin(), out.configurations.end());
  return out;
}

std::optional<Configuration> search_bounded(const PetriNet& net, const Configuration& start,
                                            const std::function<bool(const Configuration&)>& goal,
                                            std::size_t node_budget, bool& complete) {
  complete = true;
  if (goal(start)) return start;
  std::unordered_set<Configuration, VectorHash> seen{start};
  std::deque<Configuration> frontier{start};
  while (!frontier.empty()) {
    Configuration c = std::move(frontier.front());
    frontier.pop_front();
    for (std::size_t i = 0; i < net.size(); ++i) {
      if (!leq(net.actions()[i].pre, c)) continue;
      Configuration next = fire(net, c, i);
      if (seen.contains(next)) continue;
      if (goal(next)) return next;
      if (seen.size() >= node_budget) {
        complete = false;
        return std::nullopt;
      }
      seen.insert(next);
      frontier.push_back(std::move(next));
    }
  }
  return std::nullopt;
}

}  // namespace pnhs
