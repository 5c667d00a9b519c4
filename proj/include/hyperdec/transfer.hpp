#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hyperdec/expr.hpp"
#include "hyperdec/hyper_value.hpp"

namespace hyperdec {

/// The infinitesimals and infinite points used as stand-ins for "every
/// infinitesimal" and "every infinite point", plus the standard sample points
/// visited by the uniform continuity probe.
struct ProbeSet {
  ContextPtr context;
  std::vector<HyperValue> infinitesimals;   // tau, 2 tau, 1/H, 1/H^2
  std::vector<HyperValue> infinite_points;  // H, H^2, 1/tau
  std::vector<Rational> standard_points;    // -1, 0, 1/2, 1, 2

  static ProbeSet defaults(ContextPtr ctx);
  /// Throws InvalidArgument unless every listed value has the advertised magnitude.
  void validate() const;
};

/// f*(x): every variable of f is bound to x. Elementary functions are
/// expanded in a Taylor series about st(x).
HyperValue eval_star(const Expr& f, const HyperValue& x);
/// Value of a closed expression. Throws UnboundVariable otherwise.
HyperValue evaluate(const Expr& e, ContextPtr ctx);

struct DerivativeResult {
  /// st((f(x0+e) - f(x0))/e) for e = +p, -p over the probes, in that order.
  std::vector<Coefficient> quotients;
  std::optional<Coefficient> value;  // set when all quotients agree
  std::optional<std::pair<std::size_t, std::size_t>> disagreement;  // indices into quotients

  bool exists() const noexcept { return value.has_value(); }
};

DerivativeResult derivative(const Expr& f, const Coefficient& x0, const ProbeSet& probes);

enum class LimitKind { Converges, Diverges, Indeterminate, NoLimit };
std::string to_string(LimitKind kind);

struct LimitResult {
  LimitKind kind = LimitKind::Indeterminate;
  Coefficient limit;                  // Converges
  int sign = 0;                       // Diverges
  std::optional<HyperValue> internal;  // the value at the infinite index, when computed
  std::string reason;
  /// Sequences only: the same test at n = H^2, when expressible.
  std::optional<HyperValue> internal_squared;
  bool squared_disagrees = false;
};

/// Evaluates u at n = H. Never throws for evaluation failures.
LimitResult limit_seq(const Expr& u, ContextPtr ctx);
/// st(f(a +- e)) over the probe infinitesimals. Evaluation errors propagate.
LimitResult limit_fun(const Expr& f, const Coefficient& a, const ProbeSet& probes);

enum class ProbeVerdict { Pass, PassAllProbes, Fail, Inconclusive };
std::string to_string(ProbeVerdict verdict);

struct ContinuityWitness {
  HyperValue x;
  HyperValue y;
  HyperValue difference;  // f(y) - f(x), not infinitesimal
};

struct ContinuityResult {
  ProbeVerdict verdict = ProbeVerdict::Inconclusive;
  std::optional<ContinuityWitness> witness;
  std::vector<std::string> notes;
};

ContinuityResult continuity_probe(const Expr& f, const HyperValue& x, const ProbeSet& probes);
/// Standard sample points, then the infinite points. A Fail is a certified
/// counterexample; PassAllProbes is evidence only.
ContinuityResult uniform_continuity_probe(const Expr& f, const ProbeSet& probes);

struct EvtRow {
  unsigned long n;
  unsigned long index;
  Rational point;
  Rational value;
};

struct EvtResult {
  unsigned long index;
  Rational point;
  Rational value;
  std::vector<EvtRow> refinement;  // n, 2n, 4n, ... while n <= 10^6
};

constexpr unsigned long kEvtMaxPoints = 1000000;

/// Exact argmax of f over i/n, i = 0..n, first index on ties.
EvtResult evt_demo(const Expr& f, unsigned long n, int levels = 4);

}  // namespace hyperdec
