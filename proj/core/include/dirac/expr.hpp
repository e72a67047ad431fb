#ifndef DIRAC_EXPR_HPP
#define DIRAC_EXPR_HPP

#include <memory>
#include <string>

namespace dirac::expr {

// Restricted arithmetic expressions for potential coefficients:
// operators + - * / ^, functions sin cos exp log sqrt, variable x,
// decimal literals, parentheses. '^' is right-associative and binds
// tighter than unary minus on its left: -x^2 == -(x^2).
class Program {
  public:
    double eval(double x) const;
    ~Program();

  private:
    friend Program compile(const std::string&);
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

/// Throws SpecError on syntax errors (message carries the offset).
Program compile(const std::string& text);

} // namespace dirac::expr

#endif
