#include <algorithm>
#include <cstdio>
#include <functional>
#include <json.hpp>
#include <sstream>

#include "bubbles/certificates.hpp"

namespace bubbles {

namespace {

Iv<double> downcast(Iv<long double> v) {
  double lo = static_cast<double>(v.lo);
  double hi = static_cast<double>(v.hi);
  if (static_cast<long double>(lo) > v.lo) lo = detail::next_down(lo);
  if (static_cast<long double>(hi) < v.hi) hi = detail::next_up(hi);
  return {lo, hi};
}

bool certifies(Relation rel, Iv<double> d) {
  switch (rel) {
    case Relation::GE: return d.lo >= 0;
    case Relation::GT: return d.lo > 0;
    case Relation::LE: return d.hi <= 0;
    case Relation::LT: return d.hi < 0;
  }
  return false;
}

bool certifies_negation(Relation rel, Iv<double> d) {
  switch (rel) {
    case Relation::GE: return d.hi < 0;
    case Relation::GT: return d.hi <= 0;
    case Relation::LE: return d.lo > 0;
    case Relation::LT: return d.lo >= 0;
  }
  return false;
}

// Lower/upper bound of sum_k c[k]*W^k over w in [wlo, whi].
template <class F>
Iv<F> taylor_bound(const std::array<Iv<F>, 5>& c, Iv<F> w) {
  Iv<F> pw = Iv<F>::exact(1);
  Iv<F> total = c[0];
  for (int k = 1; k < 5; ++k) {
    pw = pw * w;
    total = total + c[k] * pw;
  }
  return total;
}

template <class F>
Taylor<F> eval_taylor_any(const Expr& e, const Taylor<F>& x);
template <>
Taylor<double> eval_taylor_any(const Expr& e, const Taylor<double>& x) {
  return eval_taylor_d(e, x);
}
template <>
Taylor<long double> eval_taylor_any(const Expr& e, const Taylor<long double>& x) {
  return eval_taylor_l(e, x);
}

template <class F>
Iv<F> eval_any(const Expr& e, Iv<F> x);
template <>
Iv<double> eval_any(const Expr& e, Iv<double> x) { return eval_enclosure(e, x); }
template <>
Iv<long double> eval_any(const Expr& e, Iv<long double> x) {
  return eval_enclosure_ext(e, x);
}

template <class F>
Iv<F> intersect_weak(Iv<F> a, Iv<F> b) {
  return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

// Certify d(x) rel 0 over [lo, hi] by adaptive bisection; direct interval
// evaluation first, then fourth-order Taylor forms anchored at either
// endpoint (these close the gap at roots of the inequality, where plain
// interval evaluation cannot).  Returns PASS/FAIL/MARGINAL and a lower bound
// on min d over the certified cover.
template <class F>
Status certify_range(const Expr& d, Relation rel, F lo, F hi, Iv<F>* min_bound) {
  struct Piece {
    F a, b;
    int depth;
  };
  std::vector<Piece> stack{{lo, hi, 0}};
  bool marginal = false;
  Iv<F> minb{std::numeric_limits<F>::infinity(), std::numeric_limits<F>::infinity()};
  auto note = [&](Iv<F> v) {
    minb.lo = std::min(minb.lo, v.lo);
    minb.hi = std::min(minb.hi, v.hi);
  };
  auto flip = [&](Iv<F> v) -> Iv<F> {
    // normalize LE/LT to GE/GT by negating
    if (rel == Relation::LE || rel == Relation::LT) return -v;
    return v;
  };
  bool strict = (rel == Relation::GT || rel == Relation::LT);
  while (!stack.empty()) {
    Piece p = stack.back();
    stack.pop_back();
    Iv<F> x{p.a, p.b};
    Iv<F> direct = flip(eval_any<F>(d, x));
    if (strict ? direct.lo > 0 : direct.lo >= 0) {
      note(direct);
      continue;
    }
    if (strict ? direct.hi <= 0 : direct.hi < 0) {
      note(direct);
      return Status::FAIL;
    }
    bool ok = false;
    if (p.depth >= 2) {  // Taylor forms only once boxes are reasonably small
      for (int side = 0; side < 2 && !ok; ++side) {
        try {
          F anchor = side == 0 ? p.a : p.b;
          Taylor<F> tx = Taylor<F>::variable(Iv<F>::exact(anchor));
          Taylor<F> at_anchor = eval_taylor_any<F>(d, tx);
          Taylor<F> over_all = eval_taylor_any<F>(d, Taylor<F>::variable(x));
          std::array<Iv<F>, 5> c = at_anchor.c;
          c[4] = over_all.c[4];
          Iv<F> w = side == 0 ? Iv<F>{0, detail::next_up(p.b - p.a)}
                              : Iv<F>{detail::next_down(p.a - p.b), 0};
          Iv<F> bound = flip(taylor_bound(c, w));
          if (strict ? bound.lo > 0 : bound.lo >= 0) {
            note(intersect_weak(bound, direct));
            ok = true;
          }
        } catch (const Error&) {
          // singular derivative at the anchor (e.g. sqrt hitting 0): skip
        }
      }
    }
    if (ok) continue;
    if (p.depth >= 40) {
      marginal = true;
      continue;
    }
    F mid = (p.a + p.b) / 2;
    stack.push_back({p.a, mid, p.depth + 1});
    stack.push_back({mid, p.b, p.depth + 1});
  }
  if (min_bound) *min_bound = minb;
  return marginal ? Status::MARGINAL : Status::PASS;
}

Status classify(Relation rel, Iv<double> d) {
  if (certifies(rel, d)) return Status::PASS;
  if (certifies_negation(rel, d)) return Status::FAIL;
  return Status::MARGINAL;
}

}  // namespace

Status check_item(const CertItem& item, int precision, Iv<double>* enclosure) {
  if (!item.has_domain) {
    Expr d = item.lhs - item.rhs;
    Iv<double> v = eval_enclosure(d);
    if (precision >= 2) v = intersect(v, downcast(eval_enclosure_ext(d)));
    if (enclosure) *enclosure = v;
    return classify(item.rel, v);
  }
  Expr d = item.lhs - item.rhs;
  Iv<double> dom_lo = eval_enclosure(item.dom_lo);
  Iv<double> dom_hi = eval_enclosure(item.dom_hi);
  Iv<double> minb;
  Status st = certify_range<double>(d, item.rel, dom_lo.lo, dom_hi.hi, &minb);
  if (precision >= 2 && st == Status::MARGINAL) {
    Iv<long double> minl;
    Status st2 = certify_range<long double>(
        d, item.rel, (long double)dom_lo.lo, (long double)dom_hi.hi, &minl);
    if (st2 != Status::MARGINAL) {
      st = st2;
      minb = intersect(minb, downcast(minl));
    }
  }
  // report min over domain of lhs-rhs in the item's own sign convention
  if (enclosure) {
    if (item.rel == Relation::LE || item.rel == Relation::LT)
      *enclosure = {-minb.hi, -minb.lo};
    else
      *enclosure = {minb.lo, minb.hi};
  }
  return st;
}

namespace {

std::vector<CertItem> build_ledger() {
  using E = Expr;
  E k0 = dec("11.1962"), k1 = dec("0.1605"), k2 = dec("0.0244"), k3 = dec("0.0408");
  E k4 = dec("0.0411"), k5 = dec("1.0044"), k6 = dec("0.0425"), k7 = dec("1.4199");
  E k9 = dec("0.7154"), k10 = dec("8.7939");
  E c1 = dec("1.3168"), c2 = dec("2.1606"), c3 = dec("1.1606"), c4 = dec("1.4186");
  E c5 = dec("0.9747"), c7 = dec("0.1992"), c8 = dec("2.4990"), c9 = dec("4.4111");
  E c10 = dec("1.3466"), c11 = dec("4.1064"), c12 = dec("1.6829");
  E pi = pi_expr();
  E one = rat(1), two = rat(2), three = rat(3), four = rat(4), five = rat(5), six = rat(6);
  E sp = sqrt(pi);
  E s3 = sqrt(three);
  E k8 = sqrt(two * pi / three + s3 / four);

  std::vector<CertItem> v;
  auto item = [&](std::string name, E lhs, Relation rel, E rhs, std::string src,
                  ItemClass kl = ItemClass::Essential) {
    CertItem it;
    it.name = std::move(name);
    it.lhs = std::move(lhs);
    it.rhs = std::move(rhs);
    it.rel = rel;
    it.klass = kl;
    it.source = std::move(src);
    v.push_back(std::move(it));
  };
  auto range_item = [&](std::string name, E lhs, Relation rel, E rhs, E dlo, E dhi,
                        std::string src) {
    CertItem it;
    it.name = std::move(name);
    it.lhs = std::move(lhs);
    it.rhs = std::move(rhs);
    it.rel = rel;
    it.source = std::move(src);
    it.has_domain = true;
    it.dom_lo = std::move(dlo);
    it.dom_hi = std::move(dhi);
    v.push_back(std::move(it));
  };

  item("K8-LO", k8, Relation::GT, dec("1.5897"), "lem:double_bubble");
  item("K8-HI", k8, Relation::LT, dec("1.5898"), "lem:double_bubble");
  item("K10", six * sqrt(pi / two + one / s3), Relation::GE, k10, "lemma:ptb");
  item("K2", (pi / (k0 * k0)) * (one - pi / (k0 * k0)), Relation::GE, k2, "prop:k_2");
  item("K6", (rat(16) * pi / (rat(9) * k0 * k0)) * (one - rat(16) * pi / (rat(9) * k0 * k0)),
       Relation::GE, k6, "prop:k_2");
  item("C1", k0 / sp - five, Relation::LE, c1, "prop:k_1");
  item("F1-K1", sqrt(k1) + sqrt(one - k1), Relation::GT, c1, "prop:k_1");
  item("K7", two * k0 - two * sp * (sqrt(one - k1) + five), Relation::LE, k7, "prop:k_1");
  item("C2", k0 / sp - four - sqrt(k2), Relation::LE, c2, "prop:k_3");
  item("F2-DK1", one / (two * sqrt(k1)) - one / sqrt(one - k1), Relation::GT,
       dec("0.1565"), "prop:k_3");
  item("F2-K3", two * sqrt(one - k3) + sqrt(k3), Relation::GT, c2, "prop:k_3");
  item("K9", two * k0 - two * sp * (sqrt(k2) + two * sqrt(one - k3) + four), Relation::LE,
       k9, "prop:k_3");
  item("C3", k0 / sp - five - sqrt(k2), Relation::LE, c3, "prop:k_4");
  item("F3-DK1", one / (two * sqrt(k1)) - one / sqrt(one - two * k1), Relation::GT,
       dec("0.0344"), "prop:k_4");
  item("F3-K4", sqrt(one - two * k4) + sqrt(k4), Relation::GT, c3, "prop:k_4");
  item("K5", k0 / sp - five - two * sqrt(k2), Relation::LE, k5, "prop:two_small");
  item("F4-K1", sqrt(one - three * k1) + sqrt(k1), Relation::GT, dec("1.1206"),
       "prop:two_small");
  item("F4-K2", sqrt(one - three * k2) + sqrt(k2), Relation::GT, dec("1.1189"),
       "prop:two_small");
  {
    E x = var_x();
    range_item("CHAIN-A1", three * sqrt(one - x) + one, Relation::GE,
               sqrt(one - two * x) + sqrt(one - x) + two, rat(0), rat(1, 3),
               "prop:two_small");
    range_item("CHAIN-A2", sqrt(one - two * x) + sqrt(one - x) + two, Relation::GE,
               sqrt(one - three * x) + three, rat(0), rat(1, 3), "prop:two_small");
  }
  item("BIGINT", two * sp * (sqrt(two * (one - k1)) + two), Relation::GE, dec("11.6831"),
       "cor:one_big_internal");
  item("BIGINT-K0", dec("11.6831"), Relation::GT, k0, "cor:one_big_internal");
  item("NTT-1", pi / (three * k9), Relation::GT, dec("1.4637"), "prop:not_two_two");
  item("NTT-1-K0", dec("1.4637"), Relation::GT, k0 / rat(8), "prop:not_two_two");
  item("NTT-2", two * pi / (three * k9), Relation::GT, k0 / four, "prop:not_two_two");
  item("NTT-C4", two * sp * (sqrt(one - k3) + one) - k0 / two, Relation::GT, c4,
       "prop:not_two_two");
  item("NTT-3", sp / (two * sqrt(k3)) - two / c4, Relation::GT, dec("2.9776"),
       "prop:not_two_two");
  item("NTT-3-K0", dec("2.9776"), Relation::GT, k0 / four, "prop:not_two_two");
  item("NTT-4", pi / c4, Relation::LT, dec("2.2146"), "prop:not_two_two");
  item("NTT-C5", sp * (sqrt(two * (one - k3) + one) + two) - k0 / two, Relation::GT, c5,
       "prop:not_two_two");
  item("NTT-5", sp / (two * sqrt(k3)) - two / c5, Relation::GT, dec("2.3355"),
       "prop:not_two_two");
  item("NTT-5-K0", dec("2.3355"), Relation::GT, three * k0 / rat(16), "prop:not_two_two");
  item("NTT-6", sp / two, Relation::GT, dec("0.8862"), "prop:not_two_two");
  item("NTT-6-K0", dec("0.8862"), Relation::GT, k0 / rat(16), "prop:not_two_two");
  item("NTT-C7", (sp / six) * (one - sqrt(k3) * k0 / (two * sp * (two - k3))),
       Relation::GE, c7, "prop:not_two_two");
  item("NTT-FIN", two * pi / k9 + four * c7 + (four / three) * sp, Relation::GE,
       dec("11.9428"), "prop:not_two_two");
  item("NTT-FIN-K0", dec("11.9428"), Relation::GT, k0, "prop:not_two_two");
  item("BC-1", k8 / sqrt(one - k1), Relation::LE, dec("1.7352"), "prop:BCCDDEF");
  item("BC-2", pi / k7, Relation::GE, dec("2.2125"), "prop:BCCDDEF");
  item("BC-3", two * pi / (three * k7), Relation::GE, dec("1.4750"), "prop:BCCDDEF");
  item("BC-3-GAP", dec("1.4750"), Relation::GT, dec("0.9179"), "prop:BCCDDEF");
  item("BC-3-K8", dec("0.9179"), Relation::GE, k8 / s3, "prop:BCCDDEF");
  item("BC-4",
       two * pi / (three * k7) +
           (k8 / s3) * (one - sqrt(k1) * k0 / (two * sp * (two - k1))),
       Relation::GE, dec("1.7615"), "prop:BCCDDEF");
  item("FP-C8",
       pi / k7 + (k8 / s3) * (one - sqrt(k1) * k0 / ((two - k1) * two * sp)),
       Relation::GE, c8, "prop:F'");
  item("FP-FIN", four * c8 - sp / sqrt(one - k1) + four * k8 / s3, Relation::GE,
       dec("11.5561"), "prop:F'");
  item("FP-FIN-K0", dec("11.5561"), Relation::GE, k0, "prop:F'");
  item("A-C9", two * k0 - two * sp * (sqrt(one - k1) + sqrt(k2) + four), Relation::LE, c9,
       "prop:excludeA");
  item("A-2", k0 / six - two * pi / (rat(9) * k7), Relation::LE, dec("1.3744"),
       "prop:excludeA");
  item("A-C10", two * pi / (three * c9) + two * pi / (three * (k0 - k10)), Relation::GE,
       c10, "prop:excludeA");
  item("A-FIN", two * c10 + rat(20) * pi / (three * (k0 - k10)), Relation::GE,
       dec("11.4116"), "prop:excludeA", ItemClass::Cosmetic);
  item("A-FIN-ESS", two * c10 + rat(20) * pi / (three * (k0 - k10)), Relation::GT, k0,
       "prop:excludeA");
  item("NF-C11", k0 - four * sp, Relation::LE, c11, "prop:no_flower");
  item("NF-C12", pi / c11 + k8 / s3, Relation::GE, c12, "prop:no_flower");
  item("NF-FIN", two * c12 + six * pi / (k0 - k10), Relation::GE, dec("11.2124"),
       "prop:no_flower", ItemClass::Cosmetic);
  item("NF-FIN-ESS", two * c12 + six * pi / (k0 - k10), Relation::GT, k0,
       "prop:no_flower");
  {
    E x = var_x();
    range_item("TAYLOR", one + x / two - x * x / rat(8) + x * x * x / rat(16),
               Relation::GE, sqrt(one + x), rat(0), rat(1), "prop:varII");
  }
  {
    E cx = dec("0.2707"), cy = dec("0.394");
    E r = two * (cx + cy) / s3;
    E quad = (two * cx + cy) * cy * s3 + (pi / three) * r * r - (s3 / four) * r * r;
    E tri = s3 * cy * cy + (pi / two) * three * cy * cy;
    E per = two * (two * pi / three) * r + two * pi * s3 * cy + two * cx + rat(8) * cy;
    item("COMP-QUAD", quad, Relation::GT, one, "prop:k_0");
    item("COMP-TRI", tri, Relation::GT, one, "prop:k_0");
    item("COMP-ORDER", quad, Relation::LE, tri, "prop:k_0");
    item("COMP-RAW-LO", per, Relation::GE, k0 - rat(1, 10000), "prop:k_0");
    item("COMP-RAW-HI", per, Relation::LE, k0 + rat(1, 10000), "prop:k_0");
    item("COMP-RESCALED", per / sqrt(quad), Relation::LE, k0, "prop:k_0");
  }
  item("ISO-SANITY", six * sp, Relation::LT, k0, "lem:isop");

  std::sort(v.begin(), v.end(),
            [](const CertItem& a, const CertItem& b) { return a.name < b.name; });
  return v;
}

CertReport assemble(std::vector<ItemResult> results) {
  CertReport rep;
  std::sort(results.begin(), results.end(),
            [](const ItemResult& a, const ItemResult& b) { return a.name < b.name; });
  for (const auto& r : results) {
    if (r.status == Status::PASS) rep.pass++;
    else if (r.status == Status::FAIL) rep.fail++;
    else rep.marginal++;
    if (r.klass == ItemClass::Essential) {
      if (r.status == Status::FAIL) rep.essential_fail++;
      if (r.status == Status::MARGINAL) rep.essential_marginal++;
    }
  }
  rep.items = std::move(results);
  return rep;
}

ItemResult run_item(const CertItem& it, int precision) {
  ItemResult r;
  r.name = it.name;
  r.klass = it.klass;
  r.source = it.source;
  Iv<double> enc;
  Status st = check_item(it, precision, &enc);
  if (st == Status::MARGINAL && precision < 2) {
    st = check_item(it, precision + 1, &enc);
  }
  r.status = st;
  r.lo = enc.lo;
  r.hi = enc.hi;
  return r;
}

}  // namespace

const std::vector<CertItem>& builtin_ledger() {
  static const std::vector<CertItem> ledger = build_ledger();
  return ledger;
}

CertReport check_ledger_serial(int precision) {
  const auto& items = builtin_ledger();
  std::vector<ItemResult> results(items.size());
  for (size_t i = 0; i < items.size(); ++i) results[i] = run_item(items[i], precision);
  return assemble(std::move(results));
}

CertReport check_ledger(int precision, bool parallel) {
  const auto& items = builtin_ledger();
  std::vector<ItemResult> results(items.size());
  if (parallel) {
#ifdef BUBBLES_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long i = 0; i < (long)items.size(); ++i)
      results[i] = run_item(items[i], precision);
  } else {
    for (size_t i = 0; i < items.size(); ++i) results[i] = run_item(items[i], precision);
  }
  return assemble(std::move(results));
}

const char* status_name(Status s) {
  switch (s) {
    case Status::PASS: return "PASS";
    case Status::MARGINAL: return "MARGINAL";
    case Status::FAIL: return "FAIL";
  }
  return "?";
}

std::string report_to_text(const CertReport& r) {
  std::ostringstream os;
  char buf[128];
  os << "item            status    enclosure of lhs-rhs                       class      source\n";
  for (const auto& it : r.items) {
    std::snprintf(buf, sizeof buf, "%-15s %-9s [%.12g, %.12g]", it.name.c_str(),
                  status_name(it.status), it.lo, it.hi);
    std::string line = buf;
    if (line.size() < 69) line += std::string(69 - line.size(), ' ');
    os << line << (it.klass == ItemClass::Essential ? "essential" : "cosmetic ") << "  "
       << it.source << "\n";
  }
  os << "summary: pass " << r.pass << ", marginal " << r.marginal << ", fail " << r.fail
     << "\n";
  return os.str();
}

std::string report_to_json(const CertReport& r) {
  nlohmann::json j;
  j["items"] = nlohmann::json::array();
  for (const auto& it : r.items) {
    j["items"].push_back({{"name", it.name},
                          {"status", status_name(it.status)},
                          {"lo", it.lo},
                          {"hi", it.hi},
                          {"class", it.klass == ItemClass::Essential ? "essential" : "cosmetic"},
                          {"paper_ref", it.source}});
  }
  j["summary"] = {{"pass", r.pass}, {"marginal", r.marginal}, {"fail", r.fail}};
  return j.dump(2) + "\n";
}

}  // namespace bubbles
