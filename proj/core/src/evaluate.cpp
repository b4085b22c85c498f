#include "liesym/evaluate.hpp"

#include <cmath>
#include <unordered_map>

#include "liesym/errors.hpp"

namespace liesym {

namespace {

class Evaluator {
 public:
  explicit Evaluator(const Env& env) : env_(env) {}

  double operator()(const Expr& e) {
    switch (e.kind()) {
      case Kind::number:
        return e.number().to_double();
      case Kind::symbol: {
        auto it = env_.find(e.name());
        if (it == env_.end()) throw UnboundSymbolError(e.name());
        return it->second;
      }
      default:
        break;
    }
    if (auto it = memo_.find(e.id()); it != memo_.end()) return it->second;
    double v = compute(e);
    memo_.emplace(e.id(), v);
    return v;
  }

 private:
  double compute(const Expr& e) {
    switch (e.kind()) {
      case Kind::sum: {
        double acc = 0.0;
        for (const auto& t : e.operands()) acc += (*this)(t);
        return acc;
      }
      case Kind::product: {
        double acc = 1.0;
        for (const auto& f : e.operands()) acc *= (*this)(f);
        return acc;
      }
      case Kind::power:
        return power(e);
      case Kind::log: {
        double a = (*this)(e.argument());
        if (!(a > 0.0)) throw DomainError("log of non-positive value in " + to_string(e));
        return std::log(a);
      }
      default:
        return (*this)(e);
    }
  }

  double power(const Expr& e) {
    double b = (*this)(e.base());
    double p = (*this)(e.exponent());
    bool integral = std::isfinite(p) && std::floor(p) == p;
    if (integral) {
      if (b == 0.0 && p < 0.0) throw DomainError("zero raised to a negative power in " + to_string(e));
      if (std::fabs(p) <= 64.0) {
        // Repeated squaring keeps small integer powers exact in the last ulp
        // more often than std::pow, and is deterministic across libms.
        auto n = static_cast<long long>(std::fabs(p));
        double acc = 1.0;
        double sq = b;
        while (n > 0) {
          if (n & 1) acc *= sq;
          sq *= sq;
          n >>= 1;
        }
        return p < 0.0 ? 1.0 / acc : acc;
      }
      return std::pow(b, p);
    }
    if (!(b > 0.0)) throw DomainError("non-positive base under fractional power in " + to_string(e));
    return std::pow(b, p);
  }

  const Env& env_;
  std::unordered_map<const void*, double> memo_;
};

}  // namespace

double eval_at(const Expr& e, const Env& env) { return Evaluator(env)(e); }

}  // namespace liesym
