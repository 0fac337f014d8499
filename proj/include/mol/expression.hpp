#pragma once

// Objects of the free n-fold monoidal category on a finite label set:
// canonical flattened trees over n associative operations #1,...,#n with a
// strict two-sided unit 0.  Strict associativity is modeled by flattening
// (no #i node has a #i child) and the strict unit by absorption (no node
// has a Zero child).

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mol {

class Expression {
public:
    enum class Kind { Zero, Gen, Node };

    Expression() : kind_(Kind::Zero), value_(0) {}

    static Expression zero() { return Expression(); }

    static Expression gen(int label) {
        if (label <= 0) throw std::invalid_argument("generator labels are positive");
        Expression e;
        e.kind_ = Kind::Gen;
        e.value_ = label;
        return e;
    }

    /// The #i product of `parts`, flattened and unit-absorbed.  Associative
    /// and unital as an operation on values.
    static Expression box(int op, const std::vector<Expression>& parts) {
        if (op <= 0) throw std::invalid_argument("operation index must be positive");
        std::vector<Expression> flat;
        for (const Expression& p : parts) {
            if (p.is_zero()) continue;
            if (p.is_node() && p.op() == op)
                flat.insert(flat.end(), p.children().begin(), p.children().end());
            else
                flat.push_back(p);
        }
        if (flat.empty()) return zero();
        if (flat.size() == 1) return flat.front();
        Expression e;
        e.kind_ = Kind::Node;
        e.value_ = op;
        e.children_ = std::move(flat);
        return e;
    }

    Kind kind() const { return kind_; }
    bool is_zero() const { return kind_ == Kind::Zero; }
    bool is_gen() const { return kind_ == Kind::Gen; }
    bool is_node() const { return kind_ == Kind::Node; }

    int label() const {
        if (!is_gen()) throw std::logic_error("label() on non-generator");
        return value_;
    }
    int op() const {
        if (!is_node()) throw std::logic_error("op() on non-node");
        return value_;
    }
    const std::vector<Expression>& children() const { return children_; }

    bool operator==(const Expression& o) const {
        return kind_ == o.kind_ && value_ == o.value_ && children_ == o.children_;
    }
    bool operator!=(const Expression& o) const { return !(*this == o); }

private:
    Kind kind_;
    int value_;  // label for Gen, op for Node
    std::vector<Expression> children_;
};

inline Expression box(int op, const std::vector<Expression>& parts) {
    return Expression::box(op, parts);
}

/// Canonical text form: children joined by " #i ", non-leaf children
/// parenthesized, Zero rendered as "0".
inline std::string render(const Expression& e) {
    if (e.is_zero()) return "0";
    if (e.is_gen()) return std::to_string(e.label());
    std::string out;
    const std::string sep = " #" + std::to_string(e.op()) + " ";
    bool first = true;
    for (const Expression& c : e.children()) {
        if (!first) out += sep;
        first = false;
        if (c.is_node())
            out += "(" + render(c) + ")";
        else
            out += render(c);
    }
    return out;
}

struct parse_error : std::runtime_error {
    std::size_t position;
    parse_error(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
};

namespace detail {

struct Token {
    enum class Type { Int, Op, LParen, RParen, End } type;
    int value = 0;
    std::size_t pos = 0;
};

inline std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> toks;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') { ++i; continue; }
        if (c == '(') { toks.push_back({Token::Type::LParen, 0, i}); ++i; continue; }
        if (c == ')') { toks.push_back({Token::Type::RParen, 0, i}); ++i; continue; }
        if (c == '#') {
            std::size_t j = i + 1;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            if (j == i + 1) throw parse_error("expected operation index after '#'", i);
            toks.push_back({Token::Type::Op, std::stoi(text.substr(i + 1, j - i - 1)), i});
            i = j;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            toks.push_back({Token::Type::Int, std::stoi(text.substr(i, j - i)), i});
            i = j;
            continue;
        }
        throw parse_error(std::string("unexpected character '") + c + "'", i);
    }
    toks.push_back({Token::Type::End, 0, text.size()});
    return toks;
}

class Parser {
public:
    Parser(std::vector<Token> toks, int n) : toks_(std::move(toks)), n_(n) {}

    Expression run() {
        Expression e = expr();
        if (cur().type != Token::Type::End)
            throw parse_error("trailing input", cur().pos);
        return e;
    }

private:
    const Token& cur() const { return toks_[pos_]; }
    void advance() { ++pos_; }

    Expression atom() {
        const Token& t = cur();
        if (t.type == Token::Type::LParen) {
            advance();
            Expression e = expr();
            if (cur().type != Token::Type::RParen)
                throw parse_error("expected ')'", cur().pos);
            advance();
            return e;
        }
        if (t.type == Token::Type::Int) {
            advance();
            return t.value == 0 ? Expression::zero() : Expression::gen(t.value);
        }
        throw parse_error("expected generator, '0' or '('", t.pos);
    }

    Expression expr() {
        std::vector<Expression> parts{atom()};
        int op = 0;
        while (cur().type == Token::Type::Op) {
            const Token& t = cur();
            if (t.value < 1 || t.value > n_)
                throw parse_error("operation index " + std::to_string(t.value) +
                                      " out of range 1.." + std::to_string(n_),
                                  t.pos);
            if (op == 0)
                op = t.value;
            else if (op != t.value)
                throw parse_error("mixed operations at one nesting level; parenthesize", t.pos);
            advance();
            parts.push_back(atom());
        }
        if (op == 0) return parts.front();
        return Expression::box(op, parts);
    }

    std::vector<Token> toks_;
    int n_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parse the canonical grammar; result is flattened and unit-absorbed, so
/// parse(render(e), n) == e.
inline Expression parse(const std::string& text, int n) {
    return detail::Parser(detail::tokenize(text), n).run();
}

inline void collect_leaves(const Expression& e, std::vector<int>& out) {
    if (e.is_gen()) { out.push_back(e.label()); return; }
    if (e.is_node())
        for (const Expression& c : e.children()) collect_leaves(c, out);
}

/// Sorted generator labels of e.  Throws if a label repeats.
inline std::vector<int> leaves(const Expression& e) {
    std::vector<int> out;
    collect_leaves(e, out);
    std::sort(out.begin(), out.end());
    for (std::size_t i = 1; i < out.size(); ++i)
        if (out[i] == out[i - 1])
            throw std::invalid_argument("duplicate generator " + std::to_string(out[i]));
    return out;
}

/// Leaves in left-to-right expression order.
inline std::vector<int> leaf_sequence(const Expression& e) {
    std::vector<int> out;
    collect_leaves(e, out);
    return out;
}

/// True iff e is an object of M_n(k): labels are exactly 1..k, each once,
/// and all operations lie in 1..n.
inline bool is_object(const Expression& e, int n, int k) {
    std::vector<int> ls;
    collect_leaves(e, ls);
    std::sort(ls.begin(), ls.end());
    if (static_cast<int>(ls.size()) != k) return false;
    for (int i = 0; i < k; ++i)
        if (ls[i] != i + 1) return false;
    struct {
        bool ok = true;
        int n;
        void walk(const Expression& x) {
            if (!x.is_node()) return;
            if (x.op() > n) ok = false;
            for (const Expression& c : x.children()) walk(c);
        }
    } chk{true, n};
    chk.walk(e);
    return chk.ok;
}

inline void expect_object(const Expression& e, int n, int k) {
    if (!is_object(e, n, k))
        throw std::invalid_argument("expected an object of M_" + std::to_string(n) + "(" +
                                    std::to_string(k) + "), got \"" + render(e) + "\"");
}

/// Generators outside S are replaced by the unit and the result is
/// re-canonicalized; leaves(result) = leaves(e) intersect S.
inline Expression restrict(const Expression& e, const std::set<int>& S) {
    if (e.is_zero()) return e;
    if (e.is_gen()) return S.count(e.label()) ? e : Expression::zero();
    std::vector<Expression> parts;
    parts.reserve(e.children().size());
    for (const Expression& c : e.children()) parts.push_back(restrict(c, S));
    return Expression::box(e.op(), parts);
}

/// Rename leaves by m (injective on leaves(e)); structure unchanged.
inline Expression relabel(const Expression& e, const std::map<int, int>& m) {
    if (e.is_zero()) return e;
    if (e.is_gen()) {
        auto it = m.find(e.label());
        if (it == m.end())
            throw std::invalid_argument("relabel map missing label " + std::to_string(e.label()));
        return Expression::gen(it->second);
    }
    std::vector<Expression> parts;
    parts.reserve(e.children().size());
    for (const Expression& c : e.children()) parts.push_back(relabel(c, m));
    Expression out = Expression::box(e.op(), parts);
    leaves(out);  // rejects non-injective maps
    return out;
}

namespace detail {
inline bool level_ordered_from(const Expression& e, int outer) {
    if (!e.is_node()) return true;
    if (e.op() <= outer) return false;
    for (const Expression& c : e.children())
        if (!level_ordered_from(c, e.op())) return false;
    return true;
}
}  // namespace detail

/// Membership in the Milgram subcategory: operation indices strictly
/// increase along every root-to-leaf path (#1 outermost, #n innermost).
inline bool is_level_ordered(const Expression& e) {
    return detail::level_ordered_from(e, 0);
}

/// Strict total order on expressions by canonical rendering; used for
/// deterministic enumeration and set ordering.
struct RenderLess {
    bool operator()(const Expression& a, const Expression& b) const {
        return render(a) < render(b);
    }
};

}  // namespace mol
