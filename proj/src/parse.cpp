#include "curvkit/error.hpp"
#include "curvkit/expression.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace curvkit {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const SymbolTable& symbols) : text_(text), symbols_(symbols) {}

  Expression run() {
    skip();
    if (pos_ == text_.size()) throw ParseError("empty expression", pos_);
    Expression e = expr();
    skip();
    if (pos_ != text_.size()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return e;
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) {
      if (pos_ == text_.size()) throw ParseError(std::string("expected '") + c + "' but input ended", pos_);
      throw ParseError(std::string("expected '") + c + "'", pos_);
    }
  }

  Expression expr() {
    std::vector<Expression> terms{term()};
    for (;;) {
      if (accept('+'))
        terms.push_back(term());
      else if (accept('-'))
        terms.push_back(-term());
      else
        break;
    }
    return Expression::sum(std::move(terms));
  }

  Expression term() {
    Expression acc = unary();
    for (;;) {
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        std::size_t at = pos_;
        Expression d = unary();
        if (d.is_constant(0)) throw ParseError("division by zero", at);
        acc = acc / d;
      } else {
        break;
      }
    }
    return acc;
  }

  Expression unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Expression power() {
    Expression base = primary();
    if (!accept('^')) return base;
    skip();
    std::size_t at = pos_;
    Expression k = unary();
    if (k.kind() != Expression::Kind::Constant || k.value().get_den() != 1 || abs(k.value().get_num()) > 1000000)
      throw ParseError("exponent must be an integer constant", at);
    int n = static_cast<int>(k.value().get_num().get_si());
    if (n < 0 && base.is_constant(0)) throw ParseError("division by zero", at);
    return Expression::power(base, n);
  }

  Expression primary() {
    skip();
    if (pos_ == text_.size()) throw ParseError("unexpected end of input", pos_);
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expression e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return name();
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  Expression number() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) ++pos_;
    if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      throw ParseError("missing operator after number", pos_);
    try {
      return Expression(parse_rational(text_.substr(start, pos_ - start)));
    } catch (const std::exception&) {
      throw ParseError("malformed number", start);
    }
  }

  Expression name() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    std::string id(text_.substr(start, pos_ - start));
    skip();
    bool call = pos_ < text_.size() && text_[pos_] == '(';
    if (id == "exp") {
      if (!call) throw ParseError("exp requires an argument", pos_);
      ++pos_;
      std::size_t at = pos_;
      Expression arg = expr();
      expect(')');
      NormalForm u = normalize(arg);
      std::set<AtomId> atoms;
      u.collect_atoms(atoms);
      for (AtomId a : atoms)
        if (atom_info(a).kind == AtomKind::Function)
          throw ParseError("exp argument may not contain functions", at);
      if (!u.is_polynomial() || u.numerator().min_powers().degree < 0)
        throw ParseError("exp argument must be polynomial", at);
      for (const auto& t : u.numerator().terms())
        if (!t.monomial.exponent.empty()) throw ParseError("nested exp", at);
      return Expression::exp(arg);
    }
    auto resolved = symbols_.resolve(id);
    if (!resolved) {
      if (call) throw ParseError("unknown function '" + id + "'", start);
      throw ParseError("unknown symbol '" + id + "'", start);
    }
    if (call) {
      if (!resolved->is_function) throw ParseError("'" + id + "' is not a function", start);
      ++pos_;
      std::vector<AtomId> args;
      if (!accept(')')) {
        do {
          skip();
          std::size_t at = pos_;
          std::size_t s = pos_;
          while (pos_ < text_.size() &&
                 (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
          std::string arg(text_.substr(s, pos_ - s));
          if (arg.empty()) throw ParseError("expected coordinate name", at);
          auto r = symbols_.resolve(arg);
          if (!r || atom_info(r->atom).kind != AtomKind::Coordinate || symbols_.position(r->atom) == 0)
            throw ParseError("function argument '" + arg + "' is not a coordinate", at);
          args.push_back(r->atom);
        } while (accept(','));
        expect(')');
      }
      AtomId base = atom_info(resolved->atom).base;
      std::vector<AtomId> deps = atom_info(base).dependencies;
      std::sort(deps.begin(), deps.end());
      std::sort(args.begin(), args.end());
      if (args != deps) throw ParseError("arguments of '" + id + "' do not match its declaration", start);
    }
    if (resolved->vanishes) return Expression(0);
    return Expression::symbol(resolved->atom);
  }

  std::string_view text_;
  const SymbolTable& symbols_;
  std::size_t pos_ = 0;
};

enum Precedence { kSum = 1, kUnary = 2, kProduct = 3, kPower = 4, kAtom = 5 };

bool negative_leading(const Expression& e) {
  using Kind = Expression::Kind;
  switch (e.kind()) {
    case Kind::Constant:
      return e.value() < 0;
    case Kind::Product:
      return negative_leading(e.children().front());
    case Kind::Quotient:
      return negative_leading(e.children().front());
    default:
      return false;
  }
}

Expression negate_leading(const Expression& e) {
  using Kind = Expression::Kind;
  if (e.kind() == Kind::Quotient) return Expression::quotient(negate_leading(e.children()[0]), e.children()[1]);
  return -e;
}

class Printer {
 public:
  explicit Printer(const SymbolTable& symbols) : symbols_(symbols) {}

  std::string print(const Expression& e, int context) {
    auto [text, prec] = render(e);
    if (prec < context) return "(" + text + ")";
    return text;
  }

 private:
  std::pair<std::string, int> render(const Expression& e) {
    using Kind = Expression::Kind;
    switch (e.kind()) {
      case Kind::Constant: {
        const Rational& v = e.value();
        std::string s = to_string(v);
        if (v < 0) return {s, kUnary};
        if (v.get_den() != 1) return {s, kProduct};
        return {s, kAtom};
      }
      case Kind::Symbol:
      case Kind::FunctionAtom:
        return {symbols_.atom_name(e.atom()), kAtom};
      case Kind::Exp:
        return {"exp(" + print(e.children().front(), 0) + ")", kAtom};
      case Kind::Sum: {
        std::string out;
        bool first = true;
        for (const auto& t : e.children()) {
          if (first) {
            out = print(t, kSum);
          } else if (negative_leading(t)) {
            out += " - " + print(negate_leading(t), kUnary);
          } else {
            out += " + " + print(t, kUnary);
          }
          first = false;
        }
        return {out, kSum};
      }
      case Kind::Product: {
        const auto& f = e.children();
        std::size_t i = 0;
        std::string out;
        int prec = kProduct;
        if (f.front().kind() == Kind::Constant && f.front().value() < 0) {
          prec = kUnary;
          out = "-";
          Rational mag = -f.front().value();
          if (mag != 1) {
            out += print(Expression(mag), kProduct) + "*";
          }
          i = 1;
        }
        for (std::size_t j = i; j < f.size(); ++j) {
          if (j > i) out += "*";
          out += print(f[j], j == i ? kProduct : kPower);
        }
        return {out, prec};
      }
      case Kind::Power: {
        std::string base = print(e.children().front(), kAtom);
        int k = e.exponent();
        return {base + "^" + (k < 0 ? "(" + std::to_string(k) + ")" : std::to_string(k)), kPower};
      }
      case Kind::Quotient: {
        bool neg = negative_leading(e.children()[0]);
        std::string top = print(e.children()[0], kUnary);
        std::string bottom = print(e.children()[1], kPower);
        return {top + "/" + bottom, neg ? kUnary : kProduct};
      }
    }
    return {"", kAtom};
  }

  const SymbolTable& symbols_;
};

}  // namespace

Expression parse(std::string_view text, const SymbolTable& symbols) { return Parser(text, symbols).run(); }

std::string print(const Expression& e, const SymbolTable& symbols) { return Printer(symbols).print(e, 0); }

std::string print(const NormalForm& x, const SymbolTable& symbols) { return print(to_expression(x), symbols); }

}  // namespace curvkit
