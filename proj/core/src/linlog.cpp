#include "polycat/linlog.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "polycat/errors.hpp"

namespace polycat::linlog {

namespace {

FormulaPtr leaf(Conn c) { return std::make_shared<Formula>(Formula{c, {}, nullptr, nullptr}); }

FormulaPtr binary(Conn c, FormulaPtr a, FormulaPtr b) {
    return std::make_shared<Formula>(Formula{c, {}, std::move(a), std::move(b)});
}

}  // namespace

FormulaPtr atom(std::string name) {
    return std::make_shared<Formula>(Formula{Conn::Atom, std::move(name), nullptr, nullptr});
}
FormulaPtr dual(FormulaPtr f) {
    return std::make_shared<Formula>(Formula{Conn::Dual, {}, std::move(f), nullptr});
}
FormulaPtr tensor(FormulaPtr a, FormulaPtr b) { return binary(Conn::Tensor, std::move(a), std::move(b)); }
FormulaPtr par(FormulaPtr a, FormulaPtr b) { return binary(Conn::Par, std::move(a), std::move(b)); }
FormulaPtr lolli(FormulaPtr a, FormulaPtr b) { return binary(Conn::Lolli, std::move(a), std::move(b)); }
FormulaPtr with(FormulaPtr a, FormulaPtr b) { return binary(Conn::With, std::move(a), std::move(b)); }
FormulaPtr oplus(FormulaPtr a, FormulaPtr b) { return binary(Conn::Plus, std::move(a), std::move(b)); }
FormulaPtr one() { return leaf(Conn::One); }
FormulaPtr bottom() { return leaf(Conn::Bot); }
FormulaPtr zero() { return leaf(Conn::Zero); }
FormulaPtr top() { return leaf(Conn::Top); }

bool equal(const FormulaPtr& a, const FormulaPtr& b) {
    if (a == b) return true;
    if (!a || !b || a->conn != b->conn) return false;
    switch (a->conn) {
        case Conn::Atom:
            return a->atom == b->atom;
        case Conn::Dual:
            return equal(a->left, b->left);
        case Conn::One:
        case Conn::Bot:
        case Conn::Zero:
        case Conn::Top:
            return true;
        default:
            return equal(a->left, b->left) && equal(a->right, b->right);
    }
}

std::size_t size(const FormulaPtr& f) {
    switch (f->conn) {
        case Conn::Atom:
        case Conn::One:
        case Conn::Bot:
        case Conn::Zero:
        case Conn::Top:
            return 1;
        case Conn::Dual:
            return 1 + size(f->left);
        default:
            return 1 + size(f->left) + size(f->right);
    }
}

std::string render(const FormulaPtr& f) {
    switch (f->conn) {
        case Conn::Atom:
            return f->atom;
        case Conn::One:
            return "1";
        case Conn::Bot:
            return "bot";
        case Conn::Zero:
            return "0";
        case Conn::Top:
            return "top";
        case Conn::Dual: {
            // binary children already render parenthesized
            return render(f->left) + "^";
        }
        case Conn::Tensor:
            return "(" + render(f->left) + " * " + render(f->right) + ")";
        case Conn::Par:
            return "(" + render(f->left) + " # " + render(f->right) + ")";
        case Conn::Lolli:
            return "(" + render(f->left) + " -o " + render(f->right) + ")";
        case Conn::With:
            return "(" + render(f->left) + " & " + render(f->right) + ")";
        case Conn::Plus:
            return "(" + render(f->left) + " + " + render(f->right) + ")";
    }
    throw std::logic_error("unreachable");
}

std::string render(const Sequent& s) {
    std::string out;
    for (std::size_t i = 0; i < s.antecedent.size(); ++i) {
        if (i) out += ", ";
        out += render(s.antecedent[i]);
    }
    if (!s.antecedent.empty()) out += " ";
    out += "|-";
    if (!s.succedent.empty()) out += " ";
    for (std::size_t i = 0; i < s.succedent.size(); ++i) {
        if (i) out += ", ";
        out += render(s.succedent[i]);
    }
    return out;
}

bool in_intuitionistic_fragment(const FormulaPtr& f, bool with_zero) {
    switch (f->conn) {
        case Conn::Atom:
        case Conn::One:
            return true;
        case Conn::Zero:
            return with_zero;
        case Conn::Bot:
        case Conn::Top:
        case Conn::Par:
        case Conn::Dual:
            return false;
        default:
            return in_intuitionistic_fragment(f->left, with_zero) &&
                   in_intuitionistic_fragment(f->right, with_zero);
    }
}

FormulaPtr nnf(const FormulaPtr& f) {
    switch (f->conn) {
        case Conn::Atom:
        case Conn::One:
        case Conn::Bot:
        case Conn::Zero:
        case Conn::Top:
            return f;
        case Conn::Dual:
            return nnf_dual(f->left);
        case Conn::Tensor:
            return tensor(nnf(f->left), nnf(f->right));
        case Conn::Par:
            return par(nnf(f->left), nnf(f->right));
        case Conn::Lolli:
            return par(nnf_dual(f->left), nnf(f->right));
        case Conn::With:
            return with(nnf(f->left), nnf(f->right));
        case Conn::Plus:
            return oplus(nnf(f->left), nnf(f->right));
    }
    throw std::logic_error("unreachable");
}

FormulaPtr nnf_dual(const FormulaPtr& f) {
    switch (f->conn) {
        case Conn::Atom:
            return dual(f);
        case Conn::Dual:
            return nnf(f->left);
        case Conn::One:
            return bottom();
        case Conn::Bot:
            return one();
        case Conn::Zero:
            return top();
        case Conn::Top:
            return zero();
        case Conn::Tensor:
            return par(nnf_dual(f->left), nnf_dual(f->right));
        case Conn::Par:
            return tensor(nnf_dual(f->left), nnf_dual(f->right));
        case Conn::Lolli:
            return tensor(nnf(f->left), nnf_dual(f->right));
        case Conn::With:
            return oplus(nnf_dual(f->left), nnf_dual(f->right));
        case Conn::Plus:
            return with(nnf_dual(f->left), nnf_dual(f->right));
    }
    throw std::logic_error("unreachable");
}

// --- parser ---

namespace {

struct Token {
    enum Kind { Atom, One, Bot, Zero, Top, Star, Hash, Amp, PlusSym, Lolli, Hat, LParen, RParen, Comma, Turnstile, End } kind;
    std::string text;
    std::size_t pos;
};

std::vector<Token> lex(const std::string& s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < s.size() && std::isalnum(static_cast<unsigned char>(s[j]))) ++j;
            std::string word = s.substr(i, j - i);
            if (word == "bot")
                out.push_back({Token::Bot, word, start});
            else if (word == "top")
                out.push_back({Token::Top, word, start});
            else
                out.push_back({Token::Atom, word, start});
            i = j;
            continue;
        }
        switch (c) {
            case '1': out.push_back({Token::One, "1", start}); ++i; break;
            case '0': out.push_back({Token::Zero, "0", start}); ++i; break;
            case '*': out.push_back({Token::Star, "*", start}); ++i; break;
            case '#': out.push_back({Token::Hash, "#", start}); ++i; break;
            case '&': out.push_back({Token::Amp, "&", start}); ++i; break;
            case '+': out.push_back({Token::PlusSym, "+", start}); ++i; break;
            case '^': out.push_back({Token::Hat, "^", start}); ++i; break;
            case '(': out.push_back({Token::LParen, "(", start}); ++i; break;
            case ')': out.push_back({Token::RParen, ")", start}); ++i; break;
            case ',': out.push_back({Token::Comma, ",", start}); ++i; break;
            case '-':
                if (i + 1 < s.size() && s[i + 1] == 'o') {
                    out.push_back({Token::Lolli, "-o", start});
                    i += 2;
                    break;
                }
                throw ParseError("expected '-o' at position " + std::to_string(start));
            case '|':
                if (i + 1 < s.size() && s[i + 1] == '-') {
                    out.push_back({Token::Turnstile, "|-", start});
                    i += 2;
                    break;
                }
                throw ParseError("expected '|-' at position " + std::to_string(start));
            default:
                throw ParseError(std::string("unexpected character '") + c + "' at position " +
                                 std::to_string(start));
        }
    }
    out.push_back({Token::End, "", s.size()});
    return out;
}

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    FormulaPtr formula() { return parse_lolli(); }

    bool accept(Token::Kind k) {
        if (toks_[pos_].kind != k) return false;
        ++pos_;
        return true;
    }

    void expect(Token::Kind k, const std::string& what) {
        if (!accept(k))
            throw ParseError("expected " + what + " at position " +
                             std::to_string(toks_[pos_].pos));
    }

    bool at(Token::Kind k) const { return toks_[pos_].kind == k; }
    const Token& current() const { return toks_[pos_]; }

private:
    FormulaPtr parse_lolli() {
        FormulaPtr l = parse_additive();
        if (accept(Token::Lolli)) return lolli(std::move(l), parse_lolli());
        return l;
    }

    FormulaPtr parse_additive() {
        FormulaPtr l = parse_mult();
        while (true) {
            if (accept(Token::Amp))
                l = with(std::move(l), parse_mult());
            else if (accept(Token::PlusSym))
                l = oplus(std::move(l), parse_mult());
            else
                return l;
        }
    }

    FormulaPtr parse_mult() {
        FormulaPtr l = parse_unary();
        while (true) {
            if (accept(Token::Star))
                l = tensor(std::move(l), parse_unary());
            else if (accept(Token::Hash))
                l = par(std::move(l), parse_unary());
            else
                return l;
        }
    }

    FormulaPtr parse_unary() {
        FormulaPtr f = parse_primary();
        while (accept(Token::Hat)) f = dual(std::move(f));
        return f;
    }

    FormulaPtr parse_primary() {
        const Token& t = current();
        switch (t.kind) {
            case Token::Atom: ++pos_; return atom(t.text);
            case Token::One: ++pos_; return one();
            case Token::Bot: ++pos_; return bottom();
            case Token::Zero: ++pos_; return zero();
            case Token::Top: ++pos_; return top();
            case Token::LParen: {
                ++pos_;
                FormulaPtr f = parse_lolli();
                expect(Token::RParen, "')'");
                return f;
            }
            default:
                throw ParseError("expected a formula at position " + std::to_string(t.pos));
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

std::vector<FormulaPtr> parse_side(Parser& p, Token::Kind stop1, Token::Kind stop2) {
    std::vector<FormulaPtr> out;
    if (p.at(stop1) || p.at(stop2)) return out;
    out.push_back(p.formula());
    while (p.accept(Token::Comma)) out.push_back(p.formula());
    return out;
}

}  // namespace

FormulaPtr parse_formula(const std::string& text) {
    Parser p(lex(text));
    FormulaPtr f = p.formula();
    p.expect(Token::End, "end of input");
    return f;
}

Sequent parse_sequent(const std::string& text) {
    Parser p(lex(text));
    Sequent s;
    s.antecedent = parse_side(p, Token::Turnstile, Token::Turnstile);
    p.expect(Token::Turnstile, "'|-'");
    s.succedent = parse_side(p, Token::End, Token::End);
    p.expect(Token::End, "end of input");
    return s;
}

Sequent schellinx_sequent() {
    return parse_sequent("C -o ((0 -o X) -o A), (C -o B) -o 0 |- A");
}

// --- provers ---

namespace {

struct Item {
    FormulaPtr f;
    std::string key;
};

Item item_of(const FormulaPtr& f) { return {f, render(f)}; }

std::vector<Item> sorted_items(const std::vector<FormulaPtr>& fs) {
    std::vector<Item> out;
    out.reserve(fs.size());
    for (const auto& f : fs) out.push_back(item_of(f));
    std::sort(out.begin(), out.end(), [](const Item& a, const Item& b) { return a.key < b.key; });
    return out;
}

std::string join_keys(const std::vector<Item>& items) {
    std::string out;
    for (const auto& it : items) {
        out += it.key;
        out += '\x1f';
    }
    return out;
}

std::vector<Item> without(const std::vector<Item>& items, std::size_t i) {
    std::vector<Item> out = items;
    out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
    return out;
}

std::vector<Item> with_added(std::vector<Item> items, const FormulaPtr& f) {
    Item it = item_of(f);
    auto pos = std::lower_bound(items.begin(), items.end(), it,
                                [](const Item& a, const Item& b) { return a.key < b.key; });
    items.insert(pos, std::move(it));
    return items;
}

std::vector<FormulaPtr> formulas_of(const std::vector<Item>& items) {
    std::vector<FormulaPtr> out;
    for (const auto& it : items) out.push_back(it.f);
    return out;
}

struct SearchBudget {
    std::size_t remaining;
    void tick() {
        if (remaining == 0) throw OracleTimeout("prover budget exhausted");
        --remaining;
    }
};

// One-sided classical search over NNF multisets.
class ClassicalProver {
public:
    explicit ClassicalProver(std::size_t budget) : budget_{budget} {}

    std::optional<Derivation> prove(const std::vector<Item>& items) {
        std::string key = join_keys(items);
        auto hit = memo_.find(key);
        if (hit != memo_.end()) return hit->second;
        budget_.tick();
        std::optional<Derivation> out = search(items);
        memo_.emplace(std::move(key), out);
        return out;
    }

private:
    Sequent concl(const std::vector<Item>& items) const { return Sequent{{}, formulas_of(items)}; }

    std::optional<Derivation> search(const std::vector<Item>& items) {
        for (const auto& it : items)
            if (it.f->conn == Conn::Top) return Derivation{"top", concl(items), {}};

        // invertible rules, applied deterministically
        for (std::size_t i = 0; i < items.size(); ++i) {
            const FormulaPtr& f = items[i].f;
            if (f->conn == Conn::Par) {
                auto sub = prove(with_added(with_added(without(items, i), f->left), f->right));
                if (!sub) return std::nullopt;
                return Derivation{"par", concl(items), {*sub}};
            }
            if (f->conn == Conn::Bot) {
                auto sub = prove(without(items, i));
                if (!sub) return std::nullopt;
                return Derivation{"bot", concl(items), {*sub}};
            }
            if (f->conn == Conn::With) {
                auto l = prove(with_added(without(items, i), f->left));
                if (!l) return std::nullopt;
                auto r = prove(with_added(without(items, i), f->right));
                if (!r) return std::nullopt;
                return Derivation{"with", concl(items), {*l, *r}};
            }
        }

        if (items.size() == 1 && items[0].f->conn == Conn::One)
            return Derivation{"one", concl(items), {}};
        if (items.size() == 2) {
            for (std::size_t i = 0; i < 2; ++i) {
                const FormulaPtr& a = items[i].f;
                const FormulaPtr& d = items[1 - i].f;
                if (a->conn == Conn::Atom && d->conn == Conn::Dual &&
                    d->left->conn == Conn::Atom && d->left->atom == a->atom)
                    return Derivation{"ax", concl(items), {}};
            }
        }

        for (std::size_t i = 0; i < items.size(); ++i) {
            const FormulaPtr& f = items[i].f;
            if (f->conn != Conn::Plus) continue;
            if (auto l = prove(with_added(without(items, i), f->left)))
                return Derivation{"plus1", concl(items), {*l}};
            if (auto r = prove(with_added(without(items, i), f->right)))
                return Derivation{"plus2", concl(items), {*r}};
        }

        for (std::size_t i = 0; i < items.size(); ++i) {
            const FormulaPtr& f = items[i].f;
            if (f->conn != Conn::Tensor) continue;
            std::vector<Item> rest = without(items, i);
            const std::size_t n = rest.size();
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
                std::vector<Item> gamma, delta;
                for (std::size_t k = 0; k < n; ++k)
                    (mask >> k & 1 ? gamma : delta).push_back(rest[k]);
                auto l = prove(with_added(gamma, f->left));
                if (!l) continue;
                auto r = prove(with_added(delta, f->right));
                if (!r) continue;
                return Derivation{"tensor", concl(items), {*l, *r}};
            }
        }
        return std::nullopt;
    }

    SearchBudget budget_;
    std::map<std::string, std::optional<Derivation>> memo_;
};

// Two-sided single-succedent intuitionistic search.
class IntuitionisticProver {
public:
    explicit IntuitionisticProver(std::size_t budget) : budget_{budget} {}

    std::optional<Derivation> prove(const std::vector<Item>& gamma, const Item& c) {
        std::string key = join_keys(gamma) + "\x1e" + c.key;
        auto hit = memo_.find(key);
        if (hit != memo_.end()) return hit->second;
        budget_.tick();
        std::optional<Derivation> out = search(gamma, c);
        memo_.emplace(std::move(key), out);
        return out;
    }

private:
    static Sequent concl(const std::vector<Item>& gamma, const Item& c) {
        return Sequent{formulas_of(gamma), {c.f}};
    }

    std::optional<Derivation> search(const std::vector<Item>& gamma, const Item& c) {
        for (const auto& it : gamma)
            if (it.f->conn == Conn::Zero) return Derivation{"zeroL", concl(gamma, c), {}};
        if (c.f->conn == Conn::Top) return Derivation{"topR", concl(gamma, c), {}};

        // invertible rules
        for (std::size_t i = 0; i < gamma.size(); ++i) {
            const FormulaPtr& f = gamma[i].f;
            if (f->conn == Conn::One) {
                auto sub = prove(without(gamma, i), c);
                if (!sub) return std::nullopt;
                return Derivation{"oneL", concl(gamma, c), {*sub}};
            }
            if (f->conn == Conn::Tensor) {
                auto sub = prove(with_added(with_added(without(gamma, i), f->left), f->right), c);
                if (!sub) return std::nullopt;
                return Derivation{"tensorL", concl(gamma, c), {*sub}};
            }
            if (f->conn == Conn::Plus) {
                auto l = prove(with_added(without(gamma, i), f->left), c);
                if (!l) return std::nullopt;
                auto r = prove(with_added(without(gamma, i), f->right), c);
                if (!r) return std::nullopt;
                return Derivation{"plusL", concl(gamma, c), {*l, *r}};
            }
        }
        if (c.f->conn == Conn::Lolli) {
            auto sub = prove(with_added(gamma, c.f->left), item_of(c.f->right));
            if (!sub) return std::nullopt;
            return Derivation{"lolliR", concl(gamma, c), {*sub}};
        }
        if (c.f->conn == Conn::With) {
            auto l = prove(gamma, item_of(c.f->left));
            if (!l) return std::nullopt;
            auto r = prove(gamma, item_of(c.f->right));
            if (!r) return std::nullopt;
            return Derivation{"withR", concl(gamma, c), {*l, *r}};
        }

        // non-invertible choices
        if (gamma.size() == 1 && c.f->conn == Conn::Atom && equal(gamma[0].f, c.f))
            return Derivation{"ax", concl(gamma, c), {}};
        if (gamma.empty() && c.f->conn == Conn::One) return Derivation{"oneR", concl(gamma, c), {}};

        if (c.f->conn == Conn::Plus) {
            if (auto l = prove(gamma, item_of(c.f->left)))
                return Derivation{"plusR1", concl(gamma, c), {*l}};
            if (auto r = prove(gamma, item_of(c.f->right)))
                return Derivation{"plusR2", concl(gamma, c), {*r}};
        }
        if (c.f->conn == Conn::Tensor) {
            const std::size_t n = gamma.size();
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
                std::vector<Item> g1, g2;
                for (std::size_t k = 0; k < n; ++k) (mask >> k & 1 ? g1 : g2).push_back(gamma[k]);
                auto l = prove(g1, item_of(c.f->left));
                if (!l) continue;
                auto r = prove(g2, item_of(c.f->right));
                if (!r) continue;
                return Derivation{"tensorR", concl(gamma, c), {*l, *r}};
            }
        }
        for (std::size_t i = 0; i < gamma.size(); ++i) {
            const FormulaPtr& f = gamma[i].f;
            if (f->conn == Conn::With) {
                if (auto l = prove(with_added(without(gamma, i), f->left), c))
                    return Derivation{"withL1", concl(gamma, c), {*l}};
                if (auto r = prove(with_added(without(gamma, i), f->right), c))
                    return Derivation{"withL2", concl(gamma, c), {*r}};
            }
            if (f->conn != Conn::Lolli) continue;
            std::vector<Item> rest = without(gamma, i);
            const std::size_t n = rest.size();
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
                std::vector<Item> g1, g2;
                for (std::size_t k = 0; k < n; ++k) (mask >> k & 1 ? g1 : g2).push_back(rest[k]);
                auto arg = prove(g1, item_of(f->left));
                if (!arg) continue;
                auto body = prove(with_added(g2, f->right), c);
                if (!body) continue;
                return Derivation{"lolliL", concl(gamma, c), {*arg, *body}};
            }
        }
        return std::nullopt;
    }

    SearchBudget budget_;
    std::map<std::string, std::optional<Derivation>> memo_;
};

}  // namespace

std::optional<Derivation> prove_classical(const Sequent& s, std::size_t budget) {
    std::vector<FormulaPtr> one_sided;
    for (const auto& f : s.antecedent) one_sided.push_back(nnf_dual(f));
    for (const auto& f : s.succedent) one_sided.push_back(nnf(f));
    ClassicalProver prover(budget);
    return prover.prove(sorted_items(one_sided));
}

std::optional<Derivation> prove_intuitionistic(const Sequent& s, std::size_t budget) {
    if (s.succedent.size() != 1)
        throw TypeMismatchError("intuitionistic sequents have exactly one succedent");
    for (const auto& f : s.antecedent)
        if (!in_intuitionistic_fragment(f, /*with_zero=*/true))
            throw TypeMismatchError("formula outside the intuitionistic fragment: " + render(f));
    if (!in_intuitionistic_fragment(s.succedent[0], /*with_zero=*/true))
        throw TypeMismatchError("formula outside the intuitionistic fragment: " +
                                render(s.succedent[0]));
    IntuitionisticProver prover(budget);
    return prover.prove(sorted_items(s.antecedent), item_of(s.succedent[0]));
}

// --- derivation checker ---

namespace {

using Multiset = std::vector<std::string>;

Multiset multiset_of(const std::vector<FormulaPtr>& fs) {
    Multiset m;
    for (const auto& f : fs) m.push_back(render(f));
    std::sort(m.begin(), m.end());
    return m;
}

bool remove_one(Multiset& m, const std::string& k) {
    auto it = std::find(m.begin(), m.end(), k);
    if (it == m.end()) return false;
    m.erase(it);
    return true;
}

Multiset plus_elems(Multiset m, const std::vector<std::string>& ks) {
    for (const auto& k : ks) m.push_back(k);
    std::sort(m.begin(), m.end());
    return m;
}

/// True iff removing `principal` from `whole` and adding `adds` yields a
/// multiset equal to `prem`.
bool step_matches(const Multiset& whole, const std::string& principal,
                  const std::vector<std::string>& adds, const Multiset& prem) {
    Multiset m = whole;
    if (!remove_one(m, principal)) return false;
    return plus_elems(std::move(m), adds) == prem;
}

bool fail(std::string* why, const std::string& msg) {
    if (why) *why = msg;
    return false;
}

bool check_classical_node(const Derivation& d, std::string* why);
bool check_intuitionistic_node(const Derivation& d, std::string* why);

bool check_classical_node(const Derivation& d, std::string* why) {
    if (!d.conclusion.antecedent.empty())
        return fail(why, "classical derivations are one-sided");
    const auto& succ = d.conclusion.succedent;
    Multiset ms = multiset_of(succ);
    auto prem = [&](std::size_t i) { return multiset_of(d.premises[i].conclusion.succedent); };
    const std::string& r = d.rule;

    bool ok = false;
    if (r == "ax") {
        ok = d.premises.empty() && succ.size() == 2 &&
             ((succ[0]->conn == Conn::Atom && succ[1]->conn == Conn::Dual &&
               succ[1]->left->conn == Conn::Atom && succ[1]->left->atom == succ[0]->atom) ||
              (succ[1]->conn == Conn::Atom && succ[0]->conn == Conn::Dual &&
               succ[0]->left->conn == Conn::Atom && succ[0]->left->atom == succ[1]->atom));
    } else if (r == "one") {
        ok = d.premises.empty() && succ.size() == 1 && succ[0]->conn == Conn::One;
    } else if (r == "top") {
        ok = d.premises.empty() &&
             std::any_of(succ.begin(), succ.end(),
                         [](const FormulaPtr& f) { return f->conn == Conn::Top; });
    } else if (r == "bot" && d.premises.size() == 1) {
        for (const auto& f : succ)
            ok = ok || (f->conn == Conn::Bot && step_matches(ms, render(f), {}, prem(0)));
    } else if (r == "par" && d.premises.size() == 1) {
        for (const auto& f : succ)
            ok = ok || (f->conn == Conn::Par &&
                        step_matches(ms, render(f), {render(f->left), render(f->right)}, prem(0)));
    } else if (r == "with" && d.premises.size() == 2) {
        for (const auto& f : succ)
            ok = ok || (f->conn == Conn::With &&
                        step_matches(ms, render(f), {render(f->left)}, prem(0)) &&
                        step_matches(ms, render(f), {render(f->right)}, prem(1)));
    } else if ((r == "plus1" || r == "plus2") && d.premises.size() == 1) {
        for (const auto& f : succ)
            ok = ok ||
                 (f->conn == Conn::Plus &&
                  step_matches(ms, render(f), {render(r == "plus1" ? f->left : f->right)},
                               prem(0)));
    } else if (r == "tensor" && d.premises.size() == 2) {
        for (const auto& f : succ) {
            if (f->conn != Conn::Tensor) continue;
            Multiset rest = ms;
            if (!remove_one(rest, render(f))) continue;
            Multiset p0 = prem(0), p1 = prem(1);
            if (!remove_one(p0, render(f->left)) || !remove_one(p1, render(f->right)))
                continue;
            Multiset merged = p0;
            for (const auto& k : p1) merged.push_back(k);
            std::sort(merged.begin(), merged.end());
            ok = ok || merged == rest;
        }
    }
    if (!ok) return fail(why, "rule '" + r + "' does not match at: " + render(d.conclusion));
    for (const auto& p : d.premises)
        if (!check_classical_node(p, why)) return false;
    return true;
}

bool check_intuitionistic_node(const Derivation& d, std::string* why) {
    if (d.conclusion.succedent.size() != 1)
        return fail(why, "intuitionistic derivations are single-succedent");
    const auto& ante = d.conclusion.antecedent;
    const FormulaPtr& c = d.conclusion.succedent[0];
    Multiset ms = multiset_of(ante);
    auto pa = [&](std::size_t i) { return multiset_of(d.premises[i].conclusion.antecedent); };
    auto pc = [&](std::size_t i) -> const FormulaPtr& {
        return d.premises[i].conclusion.succedent[0];
    };
    auto premises_ok = [&] {
        for (const auto& p : d.premises)
            if (p.conclusion.succedent.size() != 1) return false;
        return true;
    };
    if (!premises_ok()) return fail(why, "premise with multiple succedents");
    const std::string& r = d.rule;

    bool ok = false;
    if (r == "ax") {
        ok = d.premises.empty() && ante.size() == 1 && c->conn == Conn::Atom && equal(ante[0], c);
    } else if (r == "oneR") {
        ok = d.premises.empty() && ante.empty() && c->conn == Conn::One;
    } else if (r == "topR") {
        ok = d.premises.empty() && c->conn == Conn::Top;
    } else if (r == "zeroL") {
        ok = d.premises.empty() &&
             std::any_of(ante.begin(), ante.end(),
                         [](const FormulaPtr& f) { return f->conn == Conn::Zero; });
    } else if (r == "oneL" && d.premises.size() == 1) {
        ok = equal(pc(0), c) && step_matches(ms, "1", {}, pa(0));
    } else if (r == "tensorL" && d.premises.size() == 1) {
        for (const auto& f : ante)
            ok = ok || (f->conn == Conn::Tensor && equal(pc(0), c) &&
                        step_matches(ms, render(f), {render(f->left), render(f->right)}, pa(0)));
    } else if (r == "plusL" && d.premises.size() == 2) {
        for (const auto& f : ante)
            ok = ok || (f->conn == Conn::Plus && equal(pc(0), c) && equal(pc(1), c) &&
                        step_matches(ms, render(f), {render(f->left)}, pa(0)) &&
                        step_matches(ms, render(f), {render(f->right)}, pa(1)));
    } else if ((r == "withL1" || r == "withL2") && d.premises.size() == 1) {
        for (const auto& f : ante)
            ok = ok ||
                 (f->conn == Conn::With && equal(pc(0), c) &&
                  step_matches(ms, render(f), {render(r == "withL1" ? f->left : f->right)},
                               pa(0)));
    } else if (r == "lolliR" && d.premises.size() == 1) {
        ok = c->conn == Conn::Lolli && equal(pc(0), c->right) &&
             plus_elems(ms, {render(c->left)}) == pa(0);
    } else if (r == "withR" && d.premises.size() == 2) {
        ok = c->conn == Conn::With && equal(pc(0), c->left) && equal(pc(1), c->right) &&
             pa(0) == ms && pa(1) == ms;
    } else if ((r == "plusR1" || r == "plusR2") && d.premises.size() == 1) {
        ok = c->conn == Conn::Plus && equal(pc(0), r == "plusR1" ? c->left : c->right) &&
             pa(0) == ms;
    } else if (r == "tensorR" && d.premises.size() == 2) {
        if (c->conn == Conn::Tensor && equal(pc(0), c->left) && equal(pc(1), c->right)) {
            Multiset merged = pa(0);
            for (const auto& k : pa(1)) merged.push_back(k);
            std::sort(merged.begin(), merged.end());
            ok = merged == ms;
        }
    } else if (r == "lolliL" && d.premises.size() == 2) {
        for (const auto& f : ante) {
            if (f->conn != Conn::Lolli) continue;
            if (!equal(pc(0), f->left) || !equal(pc(1), c)) continue;
            Multiset rest = ms;
            if (!remove_one(rest, render(f))) continue;
            Multiset body = pa(1);
            if (!remove_one(body, render(f->right))) continue;
            Multiset merged = pa(0);
            for (const auto& k : body) merged.push_back(k);
            std::sort(merged.begin(), merged.end());
            ok = ok || merged == rest;
        }
    }
    if (!ok) return fail(why, "rule '" + r + "' does not match at: " + render(d.conclusion));
    for (const auto& p : d.premises)
        if (!check_intuitionistic_node(p, why)) return false;
    return true;
}

}  // namespace

bool check_derivation(const Derivation& d, bool classical, std::string* why) {
    return classical ? check_classical_node(d, why) : check_intuitionistic_node(d, why);
}

// --- interpretation ---

namespace {

std::string eval_formula(const FormulaPtr& f, const PosetalPolycategory& m,
                         const std::map<std::string, std::string>& val) {
    const Quantale& q = m.quantale();
    auto require = [&](const std::optional<std::string>& x, const char* what) {
        if (!x) throw TypeMismatchError(std::string("model has no ") + what);
        return *x;
    };
    switch (f->conn) {
        case Conn::Atom: {
            auto it = val.find(f->atom);
            if (it == val.end())
                throw TypeMismatchError("valuation misses atom " + f->atom);
            return it->second;
        }
        case Conn::One:
            return q.unit();
        case Conn::Bot:
            if (!m.dualizer()) throw TypeMismatchError("model has no dualizer");
            return *m.dualizer();
        case Conn::Zero:
            return require(q.bottom(), "bottom");
        case Conn::Top:
            return require(q.top(), "top");
        case Conn::Dual:
            return m.negate(eval_formula(f->left, m, val));
        case Conn::Tensor:
            return q.tensor(eval_formula(f->left, m, val), eval_formula(f->right, m, val));
        case Conn::Par:
            return m.negate(q.tensor(m.negate(eval_formula(f->left, m, val)),
                                     m.negate(eval_formula(f->right, m, val))));
        case Conn::Lolli:
            return q.residual(eval_formula(f->left, m, val), eval_formula(f->right, m, val));
        case Conn::With:
            return require(
                q.meet(eval_formula(f->left, m, val), eval_formula(f->right, m, val)), "meets");
        case Conn::Plus:
            return require(
                q.join(eval_formula(f->left, m, val), eval_formula(f->right, m, val)), "joins");
    }
    throw std::logic_error("unreachable");
}

}  // namespace

bool interpret(const Sequent& s, const PosetalPolycategory& m,
               const std::map<std::string, std::string>& valuation) {
    if (!m.dualizer()) throw TypeMismatchError("interpretation needs a *-autonomous model");
    const Quantale& q = m.quantale();
    std::string lhs = q.unit();
    for (const auto& f : s.antecedent) lhs = q.tensor(lhs, eval_formula(f, m, valuation));
    std::string rhs = *m.dualizer();
    bool first = true;
    for (auto it = s.succedent.rbegin(); it != s.succedent.rend(); ++it) {
        std::string v = eval_formula(*it, m, valuation);
        rhs = first ? v : m.negate(q.tensor(m.negate(v), m.negate(rhs)));
        first = false;
    }
    return q.leq(lhs, rhs);
}

// --- corpus generation ---

namespace {

std::vector<FormulaPtr> leaves_for(std::size_t atom_count, bool with_zero) {
    std::vector<FormulaPtr> out;
    for (std::size_t i = 0; i < atom_count; ++i)
        out.push_back(atom(std::string(1, static_cast<char>('A' + i))));
    out.push_back(one());
    if (with_zero) out.push_back(zero());
    return out;
}

const std::vector<Conn> kBinary = {Conn::Tensor, Conn::Lolli, Conn::With, Conn::Plus};

FormulaPtr make_binary(Conn c, FormulaPtr a, FormulaPtr b) {
    return std::make_shared<Formula>(Formula{c, {}, std::move(a), std::move(b)});
}

}  // namespace

std::vector<FormulaPtr> enumerate_formulas(std::size_t atom_count, std::size_t sz,
                                           bool with_zero) {
    std::vector<std::vector<FormulaPtr>> by_size(sz + 1);
    if (sz >= 1) by_size[1] = leaves_for(atom_count, with_zero);
    for (std::size_t n = 3; n <= sz; ++n) {
        for (std::size_t l = 1; l + 2 <= n; ++l) {
            for (const auto& a : by_size[l])
                for (const auto& b : by_size[n - 1 - l])
                    for (Conn c : kBinary) by_size[n].push_back(make_binary(c, a, b));
        }
    }
    return by_size[sz];
}

std::vector<Sequent> enumerate_sequents(std::size_t atom_count, std::size_t size_bound,
                                        bool with_zero, std::size_t max_count, bool* truncated) {
    if (truncated) *truncated = false;
    // Formulas are materialized lazily by exact size, flattened into `all`
    // in size order so antecedent multisets can be emitted canonically as
    // non-decreasing index lists. Hitting the cap keeps large sizes
    // unbuilt.
    std::vector<FormulaPtr> all;
    std::vector<std::size_t> sizes;
    std::vector<std::vector<std::size_t>> index_of_size(size_bound + 1);
    std::size_t built = 0;
    auto build_to = [&](std::size_t n) {
        for (std::size_t m = built + 1; m <= n; ++m)
            for (auto& f : enumerate_formulas(atom_count, m, with_zero)) {
                index_of_size[m].push_back(all.size());
                all.push_back(std::move(f));
                sizes.push_back(m);
            }
        built = std::max(built, n);
    };
    // antecedent multisets with exact total t, cached per t
    std::vector<std::optional<std::vector<std::vector<std::size_t>>>> antes(size_bound + 1);
    auto antes_of = [&](std::size_t t) -> const std::vector<std::vector<std::size_t>>& {
        if (!antes[t]) {
            build_to(t);
            std::vector<std::vector<std::size_t>> out;
            std::vector<std::size_t> current;
            auto rec = [&](auto&& self, std::size_t start, std::size_t remaining) -> void {
                if (remaining == 0) {
                    out.push_back(current);
                    return;
                }
                for (std::size_t i = start; i < all.size(); ++i) {
                    if (sizes[i] > remaining) continue;
                    current.push_back(i);
                    self(self, i, remaining - sizes[i]);
                    current.pop_back();
                }
            };
            rec(rec, 0, t);
            antes[t] = std::move(out);
        }
        return *antes[t];
    };

    std::vector<Sequent> out;
    for (std::size_t total = 1; total <= size_bound; ++total) {
        for (std::size_t b = 1; b <= total; ++b) {
            build_to(b);
            if (index_of_size[b].empty()) continue;
            for (const auto& idxs : antes_of(total - b)) {
                for (std::size_t i : index_of_size[b]) {
                    Sequent s;
                    for (std::size_t j : idxs) s.antecedent.push_back(all[j]);
                    s.succedent.push_back(all[i]);
                    out.push_back(std::move(s));
                    if (out.size() >= max_count) {
                        if (truncated) *truncated = true;
                        return out;
                    }
                }
            }
        }
    }
    return out;
}

namespace {

struct Counts {
    std::vector<std::uint64_t> formulas;  // f[n]
    std::vector<std::uint64_t> lists;     // ordered antecedent lists with total n
    std::vector<std::uint64_t> sequents;  // single-succedent sequents with total n
};

Counts count_tables(std::size_t leaves, std::size_t bound) {
    Counts c;
    c.formulas.assign(bound + 1, 0);
    if (bound >= 1) c.formulas[1] = leaves;
    for (std::size_t n = 3; n <= bound; ++n)
        for (std::size_t l = 1; l + 2 <= n; ++l)
            c.formulas[n] += kBinary.size() * c.formulas[l] * c.formulas[n - 1 - l];
    c.lists.assign(bound + 1, 0);
    c.lists[0] = 1;
    for (std::size_t n = 1; n <= bound; ++n)
        for (std::size_t i = 1; i <= n; ++i) c.lists[n] += c.formulas[i] * c.lists[n - i];
    c.sequents.assign(bound + 1, 0);
    for (std::size_t n = 1; n <= bound; ++n)
        for (std::size_t b = 1; b <= n; ++b) c.sequents[n] += c.formulas[b] * c.lists[n - b];
    return c;
}

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t n) {
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng);
}

FormulaPtr sample_formula(const Counts& c, const std::vector<FormulaPtr>& leaves, std::size_t sz,
                          std::mt19937_64& rng) {
    if (sz == 1) return leaves[draw(rng, leaves.size())];
    std::uint64_t r = draw(rng, c.formulas[sz]);
    for (std::size_t l = 1; l + 2 <= sz; ++l) {
        std::uint64_t block = c.formulas[l] * c.formulas[sz - 1 - l];
        for (Conn conn : kBinary) {
            if (r < block)
                return make_binary(conn, sample_formula(c, leaves, l, rng),
                                   sample_formula(c, leaves, sz - 1 - l, rng));
            r -= block;
        }
    }
    throw std::logic_error("sampling count mismatch");
}

}  // namespace

Sequent sample_sequent(std::size_t atom_count, std::size_t size_bound, bool with_zero,
                       std::mt19937_64& rng) {
    std::vector<FormulaPtr> leaves = leaves_for(atom_count, with_zero);
    Counts c = count_tables(leaves.size(), size_bound);
    std::size_t total = 0;
    do {
        total = 1 + static_cast<std::size_t>(draw(rng, size_bound));
    } while (c.sequents[total] == 0);
    std::uint64_t r = draw(rng, c.sequents[total]);
    std::size_t b = 1;
    for (; b <= total; ++b) {
        std::uint64_t block = c.formulas[b] * c.lists[total - b];
        if (r < block) break;
        r -= block;
    }
    Sequent s;
    s.succedent.push_back(sample_formula(c, leaves, b, rng));
    std::size_t remaining = total - b;
    while (remaining > 0) {
        std::uint64_t r2 = draw(rng, c.lists[remaining]);
        std::size_t i = 1;
        for (; i <= remaining; ++i) {
            std::uint64_t block = c.formulas[i] * c.lists[remaining - i];
            if (r2 < block) break;
            r2 -= block;
        }
        s.antecedent.push_back(sample_formula(c, leaves, i, rng));
        remaining -= i;
    }
    return s;
}

ConservativityReport conservativity_harness(const HarnessOptions& opts) {
    ConservativityReport report;
    std::vector<Sequent> corpus;
    if (opts.sample) {
        std::mt19937_64 rng(opts.sample->second);
        for (std::size_t i = 0; i < opts.sample->first; ++i)
            corpus.push_back(
                sample_sequent(opts.atom_count, opts.size_bound, opts.with_zero, rng));
    } else {
        corpus = enumerate_sequents(opts.atom_count, opts.size_bound, opts.with_zero,
                                    opts.max_corpus, &report.truncated);
    }
    if (opts.with_zero) corpus.push_back(schellinx_sequent());
    for (const auto& s : corpus) {
        bool c = prove_classical(s, opts.budget).has_value();
        bool i = prove_intuitionistic(s, opts.budget).has_value();
        ++report.checked;
        if (c != i) report.mismatches.push_back({s, c, i});
    }
    std::sort(report.mismatches.begin(), report.mismatches.end(),
              [](const Mismatch& a, const Mismatch& b) {
                  return render(a.sequent) < render(b.sequent);
              });
    return report;
}

}  // namespace polycat::linlog
