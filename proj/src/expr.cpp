#include "stg/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace stg {

namespace {

enum class Kind {
    Number, Coord, Param, Pi,
    Neg, Add, Sub, Mul, Div, Pow,
    Sin, Cos, Tan, Cot, Sinh, Cosh, Tanh, Exp, Ln, Sqrt, Abs,
};



const char* function_name(Kind k) {
    switch (k) {
        case Kind::Sin: return "sin";
        case Kind::Cos: return "cos";
        case Kind::Tan: return "tan";
        case Kind::Cot: return "cot";
        case Kind::Sinh: return "sinh";
        case Kind::Cosh: return "cosh";
        case Kind::Tanh: return "tanh";
        case Kind::Exp: return "exp";
        case Kind::Ln: return "ln";
        case Kind::Sqrt: return "sqrt";
        case Kind::Abs: return "abs";
        default: return "?";
    }
}

}  // namespace

struct Expr::Node {
    Kind kind;
    double number = 0.0;      // Kind::Number
    int coord = -1;           // Kind::Coord
    std::string name;         // Kind::Param (and Coord, for printing)
    std::shared_ptr<const Node> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

std::shared_ptr<Expr::Node> make_node(Kind k) {
    auto n = std::make_shared<Expr::Node>();
    n->kind = k;
    return n;
}

// ---------------------------------------------------------------- printing

int precedence(Kind k) {
    switch (k) {
        case Kind::Add: case Kind::Sub: return 1;
        case Kind::Mul: case Kind::Div: return 2;
        case Kind::Neg: return 3;
        case Kind::Pow: return 4;
        default: return 5;
    }
}

void print_node(const Expr::Node* n, std::ostream& os, int parent_prec, bool rhs_of_left_assoc) {
    int prec = precedence(n->kind);
    bool need_parens = prec < parent_prec || (prec == parent_prec && rhs_of_left_assoc);
    switch (n->kind) {
        case Kind::Number: {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.17g", n->number);
            // trim to shortest representation that round-trips
            for (int digits = 1; digits < 17; ++digits) {
                char probe[32];
                std::snprintf(probe, sizeof(probe), "%.*g", digits, n->number);
                double back = std::strtod(probe, nullptr);
                if (back == n->number) {
                    os << probe;
                    return;
                }
            }
            os << buf;
            return;
        }
        case Kind::Coord: case Kind::Param: os << n->name; return;
        case Kind::Pi: os << "pi"; return;
        case Kind::Neg:
            if (need_parens) os << "(";
            os << "-";
            print_node(n->a.get(), os, prec, false);
            if (need_parens) os << ")";
            return;
        case Kind::Add: case Kind::Sub: case Kind::Mul: case Kind::Div: {
            if (need_parens) os << "(";
            print_node(n->a.get(), os, prec, false);
            os << (n->kind == Kind::Add ? " + " : n->kind == Kind::Sub ? " - "
                   : n->kind == Kind::Mul ? "*" : "/");
            print_node(n->b.get(), os, prec, true);
            if (need_parens) os << ")";
            return;
        }
        case Kind::Pow: {
            if (need_parens) os << "(";
            // left operand of ^ must be primary-tight
            print_node(n->a.get(), os, prec + 1, false);
            os << "^";
            print_node(n->b.get(), os, prec, false);  // right-associative
            if (need_parens) os << ")";
            return;
        }
        default:
            os << function_name(n->kind) << "(";
            print_node(n->a.get(), os, 0, false);
            os << ")";
            return;
    }
}

std::string print_subexpr(const Expr::Node* n) {
    std::ostringstream os;
    print_node(n, os, 0, false);
    return os.str();
}

// -------------------------------------------------------------- evaluation

template <typename S>
struct EvalCtx {
    const std::array<double, 4>* point;
    const std::map<std::string, double>* params;
};

template <typename S>
S lift_coordinate(const std::array<double, 4>& point, int mu);

template <>
double lift_coordinate<double>(const std::array<double, 4>& point, int mu) {
    return point[mu];
}
template <>
Jet2 lift_coordinate<Jet2>(const std::array<double, 4>& point, int mu) {
    return Jet2::variable(point[mu], mu);
}

template <typename S>
S eval_node(const Expr::Node* n, const EvalCtx<S>& ctx) {
    auto domain_error = [&](const char* what) -> EvalDomainError {
        return EvalDomainError(what, print_subexpr(n), *ctx.point);
    };
    switch (n->kind) {
        case Kind::Number: return S(n->number);
        case Kind::Pi: return S(3.14159265358979323846);
        case Kind::Coord: return lift_coordinate<S>(*ctx.point, n->coord);
        case Kind::Param: {
            auto it = ctx.params->find(n->name);
            if (it == ctx.params->end())
                throw std::runtime_error("missing value for parameter '" + n->name + "'");
            return S(it->second);
        }
        case Kind::Neg: return -eval_node(n->a.get(), ctx);
        case Kind::Add: return eval_node(n->a.get(), ctx) + eval_node(n->b.get(), ctx);
        case Kind::Sub: return eval_node(n->a.get(), ctx) - eval_node(n->b.get(), ctx);
        case Kind::Mul: return eval_node(n->a.get(), ctx) * eval_node(n->b.get(), ctx);
        case Kind::Div: {
            S d = eval_node(n->b.get(), ctx);
            if (value_of(d) == 0.0) throw domain_error("division by zero");
            return eval_node(n->a.get(), ctx) / d;
        }
        case Kind::Pow: {
            S base = eval_node(n->a.get(), ctx);
            S ex = eval_node(n->b.get(), ctx);
            double bv = value_of(base), ev = value_of(ex);
            if (bv < 0.0 && ev != std::floor(ev)) throw domain_error("negative base with non-integer exponent");
            if (bv == 0.0 && ev < 0.0) throw domain_error("zero base with negative exponent");
            using stg::pow;
            using std::pow;
            return pow(base, ex);
        }
        case Kind::Sin: { using stg::sin; using std::sin; return sin(eval_node(n->a.get(), ctx)); }
        case Kind::Cos: { using stg::cos; using std::cos; return cos(eval_node(n->a.get(), ctx)); }
        case Kind::Tan: {
            S x = eval_node(n->a.get(), ctx);
            if (std::cos(value_of(x)) == 0.0) throw domain_error("tan at pole");
            using stg::tan; using std::tan;
            return tan(x);
        }
        case Kind::Cot: {
            // cot(x) = cos(x)/sin(x)
            S x = eval_node(n->a.get(), ctx);
            if (std::sin(value_of(x)) == 0.0) throw domain_error("cot at pole");
            using stg::sin; using stg::cos; using std::sin; using std::cos;
            return cos(x) / sin(x);
        }
        case Kind::Sinh: { using stg::sinh; using std::sinh; return sinh(eval_node(n->a.get(), ctx)); }
        case Kind::Cosh: { using stg::cosh; using std::cosh; return cosh(eval_node(n->a.get(), ctx)); }
        case Kind::Tanh: { using stg::tanh; using std::tanh; return tanh(eval_node(n->a.get(), ctx)); }
        case Kind::Exp:  { using stg::exp; using std::exp; return exp(eval_node(n->a.get(), ctx)); }
        case Kind::Ln: {
            S x = eval_node(n->a.get(), ctx);
            if (value_of(x) <= 0.0) throw domain_error("ln of non-positive value");
            using stg::log; using std::log;
            return log(x);
        }
        case Kind::Sqrt: {
            S x = eval_node(n->a.get(), ctx);
            if (value_of(x) < 0.0) throw domain_error("sqrt of negative value");
            if (value_of(x) == 0.0) throw domain_error("sqrt at zero (derivative pole)");
            using stg::sqrt; using std::sqrt;
            return sqrt(x);
        }
        case Kind::Abs: { using stg::abs; using std::abs; return abs(eval_node(n->a.get(), ctx)); }
    }
    throw std::logic_error("unreachable expression kind");
}

}  // namespace

// ------------------------------------------------------------------ parser

class Parser {
public:
    Parser(const std::string& src,
           const std::array<std::string, 4>& coords,
           const std::vector<std::string>& params)
        : src_(src), coords_(coords), params_(params) {}

    Expr run() {
        if (src_.find_first_not_of(" \t\r\n") == std::string::npos)
            throw ParseError("empty expression", 0);
        NodePtr n = parse_expr();
        skip_ws();
        if (pos_ != src_.size()) throw ParseError("unexpected trailing input", pos_);
        return Expr(std::move(n));
    }

private:
    const std::string& src_;
    const std::array<std::string, 4>& coords_;
    const std::vector<std::string>& params_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) { ++pos_; return true; }
        return false;
    }
    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    NodePtr parse_expr() {
        NodePtr lhs = parse_term();
        for (;;) {
            if (eat('+')) {
                auto n = make_node(Kind::Add);
                n->a = lhs; n->b = parse_term();
                lhs = n;
            } else if (eat('-')) {
                auto n = make_node(Kind::Sub);
                n->a = lhs; n->b = parse_term();
                lhs = n;
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_term() {
        NodePtr lhs = parse_unary();
        for (;;) {
            if (eat('*')) {
                auto n = make_node(Kind::Mul);
                n->a = lhs; n->b = parse_unary();
                lhs = n;
            } else if (eat('/')) {
                auto n = make_node(Kind::Div);
                n->a = lhs; n->b = parse_unary();
                lhs = n;
            } else {
                return lhs;
            }
        }
    }

    // unary minus binds looser than ^, so -x^2 parses as -(x^2)
    NodePtr parse_unary() {
        if (eat('-')) {
            auto n = make_node(Kind::Neg);
            n->a = parse_unary();
            return n;
        }
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_primary();
        if (eat('^')) {
            auto n = make_node(Kind::Pow);
            n->a = base;
            n->b = parse_unary();  // right-associative; exponent may be signed
            return n;
        }
        return base;
    }

    NodePtr parse_primary() {
        skip_ws();
        if (pos_ >= src_.size()) throw ParseError("unexpected end of expression", pos_);
        char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr inner = parse_expr();
            if (!eat(')')) throw ParseError("expected ')'", pos_);
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_symbol();
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    NodePtr parse_number() {
        std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.'))
            ++pos_;
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t mark = pos_++;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
            if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            } else {
                pos_ = mark;  // 'e' belongs to a following symbol, not this literal
            }
        }
        double v = 0.0;
        auto text = src_.substr(start, pos_ - start);
        try {
            std::size_t used = 0;
            v = std::stod(text, &used);
            if (used != text.size()) throw std::invalid_argument(text);
        } catch (const std::exception&) {
            throw ParseError("malformed number '" + text + "'", start);
        }
        auto n = make_node(Kind::Number);
        n->number = v;
        return n;
    }

    NodePtr parse_symbol() {
        std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
            ++pos_;
        std::string name = src_.substr(start, pos_ - start);

        static const std::map<std::string, Kind> kFunctions = {
            {"sin", Kind::Sin},   {"cos", Kind::Cos},   {"tan", Kind::Tan},
            {"cot", Kind::Cot},   {"sinh", Kind::Sinh}, {"cosh", Kind::Cosh},
            {"tanh", Kind::Tanh}, {"exp", Kind::Exp},   {"ln", Kind::Ln},
            {"sqrt", Kind::Sqrt}, {"abs", Kind::Abs},
        };
        auto fn = kFunctions.find(name);
        if (fn != kFunctions.end()) {
            if (!eat('(')) throw ParseError("expected '(' after function '" + name + "'", pos_);
            auto n = make_node(fn->second);
            n->a = parse_expr();
            if (!eat(')')) throw ParseError("expected ')'", pos_);
            return n;
        }
        if (name == "pi") return make_node(Kind::Pi);
        for (int mu = 0; mu < 4; ++mu) {
            if (coords_[mu] == name) {
                auto n = make_node(Kind::Coord);
                n->coord = mu;
                n->name = name;
                return n;
            }
        }
        for (const auto& p : params_) {
            if (p == name) {
                auto n = make_node(Kind::Param);
                n->name = name;
                return n;
            }
        }
        throw UndeclaredSymbolError(name, start);
    }
};

Expr Expr::parse(const std::string& src,
                 const std::array<std::string, 4>& coords,
                 const std::vector<std::string>& params) {
    return Parser(src, coords, params).run();
}

double Expr::eval(const std::array<double, 4>& point,
                  const std::map<std::string, double>& params) const {
    EvalCtx<double> ctx{&point, &params};
    return eval_node<double>(node_.get(), ctx);
}

Jet2 Expr::eval_jet(const std::array<double, 4>& point,
                    const std::map<std::string, double>& params) const {
    EvalCtx<Jet2> ctx{&point, &params};
    return eval_node<Jet2>(node_.get(), ctx);
}

std::set<std::string> Expr::free_symbols() const {
    std::set<std::string> out;
    std::vector<const Node*> stack{node_.get()};
    while (!stack.empty()) {
        const Node* n = stack.back();
        stack.pop_back();
        if (!n) continue;
        if (n->kind == Kind::Coord || n->kind == Kind::Param) out.insert(n->name);
        stack.push_back(n->a.get());
        stack.push_back(n->b.get());
    }
    return out;
}

std::string Expr::print() const { return print_subexpr(node_.get()); }

bool Expr::structurally_equal(const Expr& other) const {
    struct Cmp {
        static bool eq(const Node* a, const Node* b) {
            if (!a || !b) return a == b;
            if (a->kind != b->kind) return false;
            if (a->kind == Kind::Number && a->number != b->number) return false;
            if (a->kind == Kind::Coord && a->coord != b->coord) return false;
            if ((a->kind == Kind::Param || a->kind == Kind::Coord) && a->name != b->name) return false;
            return eq(a->a.get(), b->a.get()) && eq(a->b.get(), b->b.get());
        }
    };
    return Cmp::eq(node_.get(), other.node_.get());
}

}  // namespace stg
