#ifndef BUBBLES_CERTIFICATES_HPP
#define BUBBLES_CERTIFICATES_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "bubbles/interval.hpp"

namespace bubbles {

// Closed arithmetic expression over exact rationals, π, +, -, *, /, √ and at
// most one bound variable (for range items).
struct ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

Expr rat(std::int64_t num, std::int64_t den = 1);
Expr dec(const char* decimal);  // exact rational from a decimal literal
Expr pi_expr();
Expr var_x();
Expr operator+(Expr a, Expr b);
Expr operator-(Expr a, Expr b);
Expr operator*(Expr a, Expr b);
Expr operator/(Expr a, Expr b);
Expr sqrt(Expr a);

// Enclosure of a closed expression; `x` supplies the bound variable when the
// expression has one.
Iv<double> eval_enclosure(const Expr& e);
Iv<double> eval_enclosure(const Expr& e, Iv<double> x);
Iv<long double> eval_enclosure_ext(const Expr& e);
Iv<long double> eval_enclosure_ext(const Expr& e, Iv<long double> x);

enum class Relation { LT, LE, GT, GE };
enum class ItemClass { Essential, Cosmetic };
enum class Status { PASS, MARGINAL, FAIL };

struct CertItem {
  std::string name;
  Expr lhs, rhs;
  Relation rel = Relation::GE;
  ItemClass klass = ItemClass::Essential;
  std::string source;              // identifier of the inequality being checked
  bool has_domain = false;         // range item over x in [dom_lo, dom_hi]
  Expr dom_lo, dom_hi;
};

struct ItemResult {
  std::string name;
  Status status = Status::MARGINAL;
  double lo = 0, hi = 0;  // certified enclosure of lhs - rhs (range items: min over domain)
  ItemClass klass = ItemClass::Essential;
  std::string source;
};

struct CertReport {
  std::vector<ItemResult> items;  // ordered by item name
  int pass = 0, marginal = 0, fail = 0;
  int essential_fail = 0, essential_marginal = 0;
  bool all_essential_pass() const { return essential_fail == 0 && essential_marginal == 0; }
};

// Precision levels: 1 = double, 2 = double refined by extended precision.
Status check_item(const CertItem& item, int precision = 1,
                  Iv<double>* enclosure = nullptr);

const std::vector<CertItem>& builtin_ledger();

// Evaluates the built-in ledger at `precision`, escalating MARGINAL items one
// level.  `parallel` selects the OpenMP evaluation path; results are identical
// and ordered by item name either way.
CertReport check_ledger(int precision = 1, bool parallel = true);
CertReport check_ledger_serial(int precision = 1);

std::string report_to_text(const CertReport& r);
std::string report_to_json(const CertReport& r);

const char* status_name(Status s);

// internal: Taylor-form evaluation used by the range-item certifier
Taylor<double> eval_taylor_d(const Expr& e, const Taylor<double>& x);
Taylor<long double> eval_taylor_l(const Expr& e, const Taylor<long double>& x);

}  // namespace bubbles

#endif
