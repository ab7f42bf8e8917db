#include "adecodes/restrictions.hpp"

#include <algorithm>

namespace adecodes {

SurfaceContext SurfaceContext::from_degree(const Integer& d) {
  if (d < 1) throw InputError("degree must be positive");
  SurfaceContext c;
  c.degree = d;
  c.K_dot_H = d * (d - 4);
  c.K_even = d % 2 == 0;
  c.b2 = d * d * d - 4 * d * d + 6 * d - 2;
  c.chi = (d - 1) * (d - 2) * (d - 3) / 6 + 1;
  return c;
}

SurfaceContext SurfaceContext::k3(std::optional<Integer> degree) {
  SurfaceContext c;
  c.degree = std::move(degree);
  c.K_dot_H = 0;
  c.K_even = true;
  c.b2 = 22;
  c.chi = 2;
  return c;
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Pass: return "pass";
    case Outcome::Fail: return "fail";
    case Outcome::Inapplicable: return "inapplicable";
    case Outcome::NoRule: return "no applicable rule";
  }
  return "?";
}

namespace {

bool has_h(const CodeVector& v) { return v.h && frac(*v.h) != 0; }

CodeVector scaled(const CodeVector& v, const Integer& k) {
  CodeVector out;
  for (const auto& vals : v.values) {
    std::vector<Rational> s;
    for (const auto& x : vals) s.push_back(frac(Rational(k) * x));
    out.values.push_back(std::move(s));
  }
  if (v.h) out.h = frac(Rational(k) * *v.h);
  return out;
}

RuleResult finish(std::string rule, const Integer& order, const Integer& value, const Integer& modulus, std::string detail) {
  RuleResult r;
  r.rule = std::move(rule);
  r.order = order;
  r.modulus = modulus;
  r.residue = mod_floor(value, modulus);
  r.outcome = r.residue == 0 ? Outcome::Pass : Outcome::Fail;
  r.detail = std::move(detail);
  return r;
}

void require(const CodeVector& v, const Integer& order, bool extended, const char* rule) {
  if (vector_order(v) != order)
    throw InputError(std::string(rule) + " needs a vector of order " + order.str());
  if (has_h(v) != extended)
    throw InputError(std::string(rule) + (extended ? " needs a nonzero H-value" : " needs a zero H-value"));
}

Integer star_two(const WeightReport& w) {
  Integer s = 0;
  for (auto [m, t] : w.t_A_odd) s += Integer(m + 1) * t;
  for (auto [m, t] : w.t_D_plus) s += Integer(m) * t;
  s += 2 * w.t_D_minus + 3 * w.t_E7;
  return s;
}

Integer star_three(const WeightReport& w) {
  Integer s = 0;
  for (auto [k, t] : w.t_A_3s) s += Integer(k) * t;
  return s - w.t_E6;
}

bool is_prime_power(const Integer& n) { return n > 1 && prime_divisors(n).size() == 1; }

// Points in the support of v together with xi = N v(gamma_1), for A points.
struct CyclicSupport {
  int index;
  Integer xi;
};

std::vector<CyclicSupport> a_support(const LabeledCode& code, const CodeVector& v, const Integer& N) {
  std::vector<CyclicSupport> out;
  for (std::size_t p = 0; p < code.size(); ++p) {
    const auto& vals = v.values[p];
    if (std::all_of(vals.begin(), vals.end(), [](const Rational& x) { return x == 0; })) continue;
    const auto& l = code.points()[p].label;
    if (l.family != Family::A) throw InputError("vector of order " + N.str() + " is supported on a non-cyclic point");
    Rational x = frac(vals[0]) * Rational(N);
    out.push_back({l.index, boost::multiprecision::numerator(x)});
  }
  return out;
}

}  // namespace

RuleResult check_n2(const LabeledCode& code, const CodeVector& v, const SurfaceContext& ctx) {
  require(v, 2, false, "n2");
  const Integer s = star_two(weights(code, v));
  return finish("n2", 2, s, ctx.K_even ? 8 : 4, "(**) = " + s.str());
}

RuleResult check_n3(const LabeledCode& code, const CodeVector& v, const SurfaceContext&) {
  require(v, 3, false, "n3");
  const Integer s = star_three(weights(code, v));
  return finish("n3", 3, s, 3, "sum s t(A_{3s-1}) - t(E6) = " + s.str());
}

RuleResult check_ngt3(const LabeledCode& code, const CodeVector& v, const SurfaceContext&) {
  const Integer N = vector_order(v);
  if (N <= 4) throw InputError("ngt3 needs a vector of order > 4");
  if (has_h(v)) throw InputError("ngt3 needs a zero H-value");
  RuleResult r;
  r.rule = "ngt3";
  r.order = N;
  r.modulus = N;
  r.outcome = Outcome::Inapplicable;
  if (!is_prime_power(N)) {
    r.detail = "order " + N.str() + " is not a prime power; see its primary parts";
    return r;
  }
  const WeightReport w = weights(code, v);
  if (!w.almost_simple) {
    r.detail = "vector is not almost simple";
    return r;
  }
  Integer s = 0;
  for (const auto& a : a_support(code, v, N)) s += Integer(a.index + 1) / N;
  return finish("ngt3", N, s, N, "sum s t(A_{Ns-1}) = " + s.str());
}

RuleResult check_n5(const LabeledCode& code, const CodeVector& v, const SurfaceContext&) {
  require(v, 5, false, "n5");
  // A string of A_4's met with xi = +-1 contributes -20 to B^2, with xi = +-2
  // it contributes -30; an A_{5s-1} point carries s such strings.
  Integer s = 0;
  for (const auto& a : a_support(code, v, 5)) {
    const Integer strings = Integer(a.index + 1) / 5;
    s += (a.xi == 1 || a.xi == 4) ? strings : Integer(-strings);
  }
  return finish("n5", 5, s, 5, "signed refined weight = " + s.str());
}

RuleResult check_extended_n2(const LabeledCode& code, const CodeVector& v, const SurfaceContext& ctx) {
  require(v, 2, true, "ext-n2");
  if (!ctx.degree) throw InputError("ext-n2 needs the degree d");
  const Integer& d = *ctx.degree;
  if (d % 2 != 0) {
    RuleResult r;
    r.rule = "ext-n2";
    r.order = 2;
    r.modulus = 2;
    r.residue = 1;
    r.outcome = Outcome::Fail;
    r.detail = "H-value of order 2 needs 2 | d', but d = " + d.str() + " is odd";
    return r;
  }
  const Integer s = star_two(weights(code, v)) - d / 2 - ctx.K_dot_H;
  return finish("ext-n2", 2, s, 4, "(**) - d/2 - K.H = " + s.str());
}

RuleResult check_extended_n3(const LabeledCode& code, const CodeVector& v, const SurfaceContext& ctx) {
  require(v, 3, true, "ext-n3");
  if (!ctx.degree) throw InputError("ext-n3 needs the degree d");
  const Integer& d = *ctx.degree;
  if (d % 3 != 0) {
    RuleResult r;
    r.rule = "ext-n3";
    r.order = 3;
    r.modulus = 3;
    r.residue = mod_floor(d, 3);
    r.outcome = Outcome::Fail;
    r.detail = "H-value of order 3 needs 3 | d, but d = " + d.str();
    return r;
  }
  const int eps = *v.h == Rational(1, 3) ? 1 : -1;
  const Integer s = star_three(weights(code, v)) + d / 3 + eps * ctx.K_dot_H;
  return finish("ext-n3", 3, s, 3, "(***) + d/3 + eps K.H = " + s.str() + " (eps = " + std::to_string(eps) + ")");
}

bool RestrictionReport::passed() const {
  return std::none_of(results.begin(), results.end(), [](const RuleResult& r) { return r.outcome == Outcome::Fail; });
}

RestrictionReport check_vector(const LabeledCode& code, const CodeVector& v, const SurfaceContext& ctx) {
  RestrictionReport report;
  const Integer N = vector_order(v);
  if (N == 1) return report;
  for (const Integer& p : prime_divisors(N)) {
    Integer q = p;
    const unsigned k = valuation(N, p);
    for (unsigned j = 1; j <= k; ++j, q *= p) {
      const CodeVector w = scaled(v, N / q);
      const std::size_t before = report.results.size();
      if (has_h(w)) {
        if (q == 2) report.results.push_back(check_extended_n2(code, w, ctx));
        if (q == 3) report.results.push_back(check_extended_n3(code, w, ctx));
      } else {
        if (q == 2) report.results.push_back(check_n2(code, w, ctx));
        if (q == 3) report.results.push_back(check_n3(code, w, ctx));
        if (q == 5) report.results.push_back(check_n5(code, w, ctx));
        if (q > 4) report.results.push_back(check_ngt3(code, w, ctx));
      }
      const bool evaluated = std::any_of(report.results.begin() + static_cast<std::ptrdiff_t>(before), report.results.end(),
                                         [](const RuleResult& r) { return r.outcome == Outcome::Pass || r.outcome == Outcome::Fail; });
      if (!evaluated) {
        RuleResult none;
        none.rule = "none";
        none.order = q;
        none.outcome = Outcome::NoRule;
        none.detail = "no rule covers vectors of order " + q.str() + (has_h(w) ? " with a nonzero H-value" : "");
        report.results.push_back(std::move(none));
      }
    }
  }
  return report;
}

bool CodeCheck::passed() const {
  return std::all_of(reports.begin(), reports.end(), [](const RestrictionReport& r) { return r.passed(); });
}

CodeCheck check_code(const LabeledCode& code, const SurfaceContext& ctx) {
  CodeCheck out;
  for (auto& v : code.enumerate()) {
    if (v.is_zero()) continue;
    out.reports.push_back(check_vector(code, v, ctx));
    out.vectors.push_back(std::move(v));
  }
  return out;
}

BInequality b_inequality(const LabeledCode& code, const SurfaceContext& ctx) {
  const LabeledCode strict = code.strict_part();
  BInequality r;
  for (const auto& e : strict.orders()) r.k2_dim += (e % 2 == 0);
  Integer delta = 0;
  for (const auto& p : code.points()) delta += delta_independent(DynkinConfig(p.label));
  r.lower_bound = delta - ctx.b2 / 2;
  r.pass = r.k2_dim >= r.lower_bound;
  r.equality = r.k2_dim == r.lower_bound;
  return r;
}

}  // namespace adecodes
