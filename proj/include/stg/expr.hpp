#pragma once

#include <array>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "stg/jet.hpp"

namespace stg {

struct ParseError : std::runtime_error {
    std::size_t offset;
    ParseError(const std::string& msg, std::size_t off)
        : std::runtime_error(msg + " (at byte " + std::to_string(off) + ")"), offset(off) {}
};

struct UndeclaredSymbolError : std::runtime_error {
    std::string symbol;
    UndeclaredSymbolError(const std::string& name, std::size_t off)
        : std::runtime_error("undeclared symbol '" + name + "' (at byte " + std::to_string(off) + ")"),
          symbol(name) {}
};

struct EvalDomainError : std::runtime_error {
    EvalDomainError(const std::string& what, const std::string& subexpr,
                    const std::array<double, 4>& point)
        : std::runtime_error(what + " in '" + subexpr + "' at (" +
                             std::to_string(point[0]) + ", " + std::to_string(point[1]) + ", " +
                             std::to_string(point[2]) + ", " + std::to_string(point[3]) + ")") {}
};

// Closed-form coordinate expression: numeric literals, the 4 chart
// coordinates, named parameters, + - * / ^, unary minus, elementary
// functions and the constant pi. Immutable after parsing.
class Expr {
public:
    Expr() = default;

    // Parses with standard precedence: ^ right-associative and binding
    // tighter than unary minus, then * /, then + -.
    static Expr parse(const std::string& src,
                      const std::array<std::string, 4>& coords,
                      const std::vector<std::string>& params);

    bool empty() const { return !node_; }

    double eval(const std::array<double, 4>& point,
                const std::map<std::string, double>& params) const;
    Jet2 eval_jet(const std::array<double, 4>& point,
                  const std::map<std::string, double>& params) const;

    std::set<std::string> free_symbols() const;

    std::string print() const;

    bool structurally_equal(const Expr& other) const;

    struct Node;

private:
    std::shared_ptr<const Node> node_;
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    friend class Parser;
};

}  // namespace stg
