#include "locext/groebner.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace locext::alg {

namespace {

// Index of the first basis element whose leading monomial divides m.
std::size_t find_divisor(const Monomial& m, const std::vector<Polynomial>& basis,
                         const std::vector<std::size_t>& active) {
  for (std::size_t idx : active) {
    const Polynomial& g = basis[idx];
    if (!g.is_zero() && g.lead().mono.divides(m)) return idx;
  }
  return kNoIndex;
}

// Reduces p fully by basis[active]; steps are recorded when requested.
Polynomial reduce(Polynomial p, const std::vector<Polynomial>& basis, const std::vector<std::size_t>& active,
                  std::vector<ReductionStep>* steps) {
  std::vector<Term> done;
  while (!p.is_zero()) {
    const Term& lt = p.lead();
    const std::size_t idx = find_divisor(lt.mono, basis, active);
    if (idx == kNoIndex) {
      done.push_back(lt);
      p.pop_lead();
      continue;
    }
    const Polynomial& g = basis[idx];
    const Monomial q = lt.mono / g.lead().mono;
    const mpq_class c = lt.coeff / g.lead().coeff;
    if (steps) steps->push_back({idx, q, c});
    p.sub_mul(c, q, g);
  }
  return Polynomial::from_terms(std::move(done));
}

std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

struct Pair {
  Monomial lcm;
  std::size_t i;
  std::size_t j;
};

struct PairLess {
  bool operator()(const Pair& a, const Pair& b) const {
    if (a.lcm.degree != b.lcm.degree) return a.lcm.degree < b.lcm.degree;
    const int c = grevlex_compare(a.lcm, b.lcm);
    if (c != 0) return c < 0;
    return std::tie(a.i, a.j) < std::tie(b.i, b.j);
  }
};

class Engine {
 public:
  explicit Engine(const GroebnerOptions& opt) : opt_(opt) {}

  GroebnerBasis run(const std::vector<Polynomial>& generators) {
    // insert generators by increasing leading monomial
    std::vector<std::size_t> order;
    for (std::size_t g = 0; g < generators.size(); ++g)
      if (!generators[g].is_zero()) order.push_back(g);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return grevlex_compare(generators[a].lead().mono, generators[b].lead().mono) < 0;
    });
    for (std::size_t g : order) {
      Derivation d;
      d.generator = g;
      add(generators[g], std::move(d));
    }
    while (!pairs_.empty()) {
      const Pair pr = *pairs_.begin();
      pairs_.erase(pairs_.begin());
      ++out_.pairs_done;
      Derivation d;
      d.left = pr.i;
      d.right = pr.j;
      add(s_polynomial(items_[pr.i], items_[pr.j]), std::move(d));
      if (opt_.progress && out_.pairs_done % std::max<std::size_t>(1, opt_.progress_every) == 0)
        opt_.progress({out_.pairs_done, pairs_.size(), active_.size(), pr.lcm.degree});
    }
    finish();
    return std::move(out_);
  }

 private:
  const GroebnerOptions& opt_;
  std::vector<Polynomial> items_;
  std::vector<Derivation> derivations_;
  std::vector<std::size_t> active_;
  std::set<Pair, PairLess> pairs_;
  GroebnerBasis out_;

  void add(const Polynomial& base, Derivation d) {
    Polynomial r = reduce(base, items_, active_, opt_.record_trace ? &d.steps : nullptr);
    if (r.is_zero()) {
      ++out_.zero_reductions;
      return;
    }
    d.scale = 1 / r.lead().coeff;
    r *= d.scale;
    const std::size_t h = items_.size();
    items_.push_back(std::move(r));
    if (opt_.record_trace) derivations_.push_back(std::move(d));
    update(h);
  }

  void update(std::size_t h) {
    const Monomial& lh = items_[h].lead().mono;
    std::vector<Pair> c;
    for (std::size_t g : active_) c.push_back({lcm(lh, items_[g].lead().mono), g, h});
    std::vector<Pair> d;
    for (std::size_t a = 0; a < c.size(); ++a) {
      const Pair& p = c[a];
      bool keep = coprime(lh, items_[p.i].lead().mono);
      if (!keep) {
        keep = true;
        for (std::size_t b = a + 1; b < c.size() && keep; ++b)
          if (c[b].lcm.divides(p.lcm)) keep = false;
        for (std::size_t b = 0; b < d.size() && keep; ++b)
          if (d[b].lcm.divides(p.lcm)) keep = false;
      }
      if (keep) d.push_back(p);
    }
    std::set<Pair, PairLess> next;
    for (const Pair& p : pairs_) {
      if (!lh.divides(p.lcm) || lcm(items_[p.i].lead().mono, lh) == p.lcm ||
          lcm(items_[p.j].lead().mono, lh) == p.lcm)
        next.insert(p);
    }
    for (const Pair& p : d)
      if (!coprime(lh, items_[p.i].lead().mono)) next.insert(p);
    pairs_ = std::move(next);
    std::vector<std::size_t> act;
    for (std::size_t g : active_)
      if (!lh.divides(items_[g].lead().mono)) act.push_back(g);
    act.push_back(h);
    active_ = std::move(act);
  }

  void finish() {
    // minimal basis, then tail reduction of each element by the others
    std::vector<std::size_t> minimal;
    for (std::size_t a : active_) {
      bool redundant = false;
      for (std::size_t b : active_)
        if (a != b && items_[b].lead().mono.divides(items_[a].lead().mono) &&
            !(items_[a].lead().mono == items_[b].lead().mono && a < b))
          redundant = true;
      if (!redundant) minimal.push_back(a);
    }
    std::vector<Polynomial> gb;
    for (std::size_t a : minimal) {
      std::vector<std::size_t> others;
      for (std::size_t b : minimal)
        if (b != a) others.push_back(b);
      const Polynomial& p = items_[a];
      Polynomial tail = Polynomial::from_terms({p.terms().begin() + 1, p.terms().end()});
      Polynomial red = reduce(tail, items_, others, nullptr);
      red += Polynomial::monomial(p.lead().mono, p.lead().coeff);
      gb.push_back(red.monic());
    }
    std::sort(gb.begin(), gb.end(), [](const Polynomial& x, const Polynomial& y) {
      return grevlex_compare(x.lead().mono, y.lead().mono) < 0;
    });
    out_.polys = std::move(gb);
    if (opt_.record_trace) out_.trace = GroebnerTrace{std::move(items_), std::move(derivations_)};
  }
};

}  // namespace

Polynomial normal_form(const Polynomial& p, const std::vector<Polynomial>& basis) {
  return reduce(p, basis, all_indices(basis.size()), nullptr);
}

NormalForm normal_form_with_steps(const Polynomial& p, const std::vector<Polynomial>& basis) {
  NormalForm out;
  out.remainder = reduce(p, basis, all_indices(basis.size()), &out.steps);
  return out;
}

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g) {
  const Monomial l = lcm(f.lead().mono, g.lead().mono);
  Polynomial s = f.times(l / f.lead().mono, 1 / f.lead().coeff);
  s.sub_mul(1 / g.lead().coeff, l / g.lead().mono, g);
  return s;
}

GroebnerBasis buchberger(const std::vector<Polynomial>& generators, const GroebnerOptions& options) {
  return Engine(options).run(generators);
}

bool is_groebner_basis(const std::vector<Polynomial>& basis) {
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      if (basis[i].is_zero() || basis[j].is_zero()) continue;
      if (coprime(basis[i].lead().mono, basis[j].lead().mono)) continue;
      if (!normal_form(s_polynomial(basis[i], basis[j]), basis).is_zero()) return false;
    }
  return true;
}

std::optional<std::size_t> replay_trace(const std::vector<Polynomial>& generators, const GroebnerTrace& trace) {
  if (trace.items.size() != trace.derivations.size()) return trace.items.size();
  for (std::size_t t = 0; t < trace.items.size(); ++t) {
    const Derivation& d = trace.derivations[t];
    Polynomial p;
    if (d.generator != kNoIndex) {
      if (d.generator >= generators.size()) return t;
      p = generators[d.generator];
    } else {
      if (d.left >= t || d.right >= t) return t;
      const Polynomial& l = trace.items[d.left];
      const Polynomial& r = trace.items[d.right];
      if (l.is_zero() || r.is_zero()) return t;
      const Monomial m = lcm(l.lead().mono, r.lead().mono);
      p = l.times(m / l.lead().mono, 1);
      p.sub_mul(1, m / r.lead().mono, r);
    }
    for (const auto& s : d.steps) {
      if (s.index >= t) return t;
      p.sub_mul(s.coeff, s.mono, trace.items[s.index]);
    }
    p *= d.scale;
    if (p != trace.items[t]) return t;
  }
  return std::nullopt;
}

}  // namespace locext::alg
