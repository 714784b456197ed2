#pragma once

#include <cstddef>
#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "algebra.hpp"

namespace ualg {

  //! A term with constants over the signature of some FiniteAlgebra.
  //!
  //! Nodes are immutable and shared, so a term is a DAG with tree semantics:
  //! derivations produced by closure searches reuse subterms instead of
  //! copying them.
  class Term {
   public:
    struct Var {
      std::size_t index;
    };
    struct Const {
      Elem value;
    };
    struct Apply {
      std::string       symbol;
      std::vector<Term> args;
    };
    using Node = std::variant<Var, Const, Apply>;

    Term() : Term(Var{0}) {}

    static Term var(std::size_t i) { return Term(Var{i}); }
    static Term constant(Elem c) { return Term(Const{c}); }
    static Term apply(std::string symbol, std::vector<Term> args) {
      return Term(Apply{std::move(symbol), std::move(args)});
    }

    [[nodiscard]] Node const& node() const noexcept { return *_node; }
    [[nodiscard]] void const* id() const noexcept { return _node.get(); }

    [[nodiscard]] bool is_var() const noexcept { return std::holds_alternative<Var>(*_node); }
    [[nodiscard]] bool is_const() const noexcept {
      return std::holds_alternative<Const>(*_node);
    }

    //! Largest variable index plus one.
    [[nodiscard]] std::size_t num_vars() const {
      std::unordered_map<void const*, std::size_t> memo;
      return num_vars_impl(memo);
    }

    //! Number of nodes in the DAG.
    [[nodiscard]] std::size_t dag_size() const {
      std::unordered_map<void const*, bool> seen;
      return dag_size_impl(seen);
    }

    //! Renders the term as text. Subterms are expanded, so the output of
    //! deep derivations is cut at `limit` characters.
    [[nodiscard]] std::string to_string(FiniteAlgebra const* alg = nullptr,
                                        std::size_t limit = 2000) const {
      std::string out;
      render(out, alg, limit);
      if (out.size() >= limit) {
        out.resize(limit);
        out += "...";
      }
      return out;
    }

   private:
    explicit Term(Node n) : _node(std::make_shared<Node const>(std::move(n))) {}

    std::size_t num_vars_impl(std::unordered_map<void const*, std::size_t>& memo) const {
      if (auto it = memo.find(id()); it != memo.end()) {
        return it->second;
      }
      std::size_t r = 0;
      if (auto const* v = std::get_if<Var>(_node.get())) {
        r = v->index + 1;
      } else if (auto const* a = std::get_if<Apply>(_node.get())) {
        for (auto const& c : a->args) {
          r = std::max(r, c.num_vars_impl(memo));
        }
      }
      memo.emplace(id(), r);
      return r;
    }

    std::size_t dag_size_impl(std::unordered_map<void const*, bool>& seen) const {
      if (!seen.emplace(id(), true).second) {
        return 0;
      }
      std::size_t r = 1;
      if (auto const* a = std::get_if<Apply>(_node.get())) {
        for (auto const& c : a->args) {
          r += c.dag_size_impl(seen);
        }
      }
      return r;
    }

    void render(std::string& out, FiniteAlgebra const* alg, std::size_t limit) const {
      if (out.size() >= limit) {
        return;
      }
      if (auto const* v = std::get_if<Var>(_node.get())) {
        out += "x" + std::to_string(v->index);
      } else if (auto const* c = std::get_if<Const>(_node.get())) {
        out += alg != nullptr ? "#" + alg->element_label(c->value)
                              : "#" + std::to_string(c->value);
      } else {
        auto const& a = std::get<Apply>(*_node);
        out += a.symbol;
        if (!a.args.empty()) {
          out += '(';
          for (std::size_t i = 0; i < a.args.size(); ++i) {
            if (i > 0) {
              out += ',';
            }
            a.args[i].render(out, alg, limit);
            if (out.size() >= limit) {
              return;
            }
          }
          out += ')';
        }
      }
    }

    std::shared_ptr<Node const> _node;
  };

  namespace detail {
    inline Elem eval_term_impl(FiniteAlgebra const&                  alg,
                               Term const&                           t,
                               std::span<Elem const>                 env,
                               std::unordered_map<void const*, Elem>& memo) {
      if (auto it = memo.find(t.id()); it != memo.end()) {
        return it->second;
      }
      Elem r = 0;
      std::visit(
          [&](auto const& n) {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, Term::Var>) {
              if (n.index >= env.size()) {
                throw InputError("eval_term: no binding for variable x"
                                 + std::to_string(n.index));
              }
              if (env[n.index] >= alg.size()) {
                throw InputError("eval_term: binding for x" + std::to_string(n.index)
                                 + " out of range");
              }
              r = env[n.index];
            } else if constexpr (std::is_same_v<N, Term::Const>) {
              if (n.value >= alg.size()) {
                throw InputError("eval_term: constant " + std::to_string(n.value)
                                 + " out of range");
              }
              r = n.value;
            } else {
              std::size_t op = alg.operation_index(n.symbol);
              if (alg.operation(op).arity != n.args.size()) {
                throw InputError("eval_term: operation '" + n.symbol + "' expects "
                                 + std::to_string(alg.operation(op).arity)
                                 + " arguments");
              }
              std::vector<Elem> args(n.args.size());
              for (std::size_t i = 0; i < args.size(); ++i) {
                args[i] = eval_term_impl(alg, n.args[i], env, memo);
              }
              r = alg.apply(op, args);
            }
          },
          t.node());
      memo.emplace(t.id(), r);
      return r;
    }
  }  // namespace detail

  //! Evaluates `t` bottom-up with variable i bound to env[i].
  inline Elem eval_term(FiniteAlgebra const& alg, Term const& t, std::span<Elem const> env) {
    std::unordered_map<void const*, Elem> memo;
    return detail::eval_term_impl(alg, t, env, memo);
  }

  //! Evaluates `t` with variables bound through an explicit map.
  inline Elem eval_term(FiniteAlgebra const&                         alg,
                        Term const&                                  t,
                        std::unordered_map<std::size_t, Elem> const& env) {
    std::vector<Elem> dense(t.num_vars(), 0);
    std::vector<bool> bound(dense.size(), false);
    for (auto [k, v] : env) {
      if (k < dense.size()) {
        dense[k] = v;
        bound[k] = true;
      }
    }
    for (std::size_t i = 0; i < dense.size(); ++i) {
      if (!bound[i]) {
        throw InputError("eval_term: no binding for variable x" + std::to_string(i));
      }
    }
    return eval_term(alg, t, std::span<Elem const>(dense));
  }

  namespace detail {
    inline Term substitute_impl(Term const& t, std::vector<Term> const& vars,
                                std::unordered_map<void const*, Term>& memo) {
      if (auto it = memo.find(t.id()); it != memo.end()) {
        return it->second;
      }
      Term r = t;
      if (auto const* v = std::get_if<Term::Var>(&t.node())) {
        if (v->index >= vars.size()) {
          throw InputError("substitute: no replacement for x" + std::to_string(v->index));
        }
        r = vars[v->index];
      } else if (auto const* a = std::get_if<Term::Apply>(&t.node())) {
        std::vector<Term> args;
        args.reserve(a->args.size());
        for (auto const& c : a->args) {
          args.push_back(substitute_impl(c, vars, memo));
        }
        r = Term::apply(a->symbol, std::move(args));
      }
      memo.emplace(t.id(), r);
      return r;
    }
  }  // namespace detail

  //! t with each variable xi replaced by vars[i].
  inline Term substitute(Term const& t, std::vector<Term> const& vars) {
    std::unordered_map<void const*, Term> memo;
    return detail::substitute_impl(t, vars, memo);
  }

  //! t(x0 := inner), for unary composition.
  inline Term substitute(Term const& t, Term const& inner) {
    return substitute(t, std::vector<Term>{inner});
  }

  //! The full table of `t` as an `arity`-ary operation on `alg`.
  inline std::vector<Elem> term_table(FiniteAlgebra const& alg, Term const& t, std::size_t arity) {
    TupleCodec        codec(alg.size(), arity);
    std::vector<Elem> table(codec.count());
    std::vector<Elem> env(arity);
    for (std::size_t i = 0; i < codec.count(); ++i) {
      codec.decode(i, env);
      table[i] = eval_term(alg, t, env);
    }
    return table;
  }

  //! Parses the rendering produced by Term::to_string: variables x0, x1, ...,
  //! constants #k by index or #label by element name, and sym(t1,...,tk) for
  //! each operation symbol of `alg` (longest symbol wins, so "(+)" parses).
  inline Term parse_term(std::string_view text, FiniteAlgebra const& alg) {
    std::size_t pos  = 0;
    auto        fail = [&](std::string const& what) -> Term {
      throw InputError("term: " + what + " at offset " + std::to_string(pos) + " in '"
                       + std::string(text) + "'");
    };
    auto skip = [&] {
      while (pos < text.size() && text[pos] == ' ') {
        ++pos;
      }
    };
    auto digits = [&] {
      std::size_t v = 0, start = pos;
      while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
        v = v * 10 + std::size_t(text[pos++] - '0');
        if (v > kDefaultUniverseCap) {
          fail("number too large");
        }
      }
      return pos == start ? std::optional<std::size_t>{} : std::optional<std::size_t>{v};
    };
    std::vector<std::size_t> by_length(alg.num_operations());
    for (std::size_t i = 0; i < by_length.size(); ++i) {
      by_length[i] = i;
    }
    std::stable_sort(by_length.begin(), by_length.end(), [&](std::size_t a, std::size_t b) {
      return alg.symbol(a).size() > alg.symbol(b).size();
    });

    auto parse = [&](auto&& self) -> Term {
      skip();
      if (pos < text.size() && text[pos] == '#') {
        ++pos;
        auto delimited = [&](std::size_t at) {
          return at == text.size() || std::string_view(",) ").find(text[at]) != std::string_view::npos;
        };
        for (Elem e = 0; e < alg.size(); ++e) {
          auto lab = alg.element_label(e);
          if (text.substr(pos, lab.size()) == lab && delimited(pos + lab.size())) {
            pos += lab.size();
            return Term::constant(e);
          }
        }
        if (auto v = digits(); v && delimited(pos)) {
          if (*v >= alg.size()) {
            fail("constant out of range");
          }
          return Term::constant(static_cast<Elem>(*v));
        }
        return fail("unknown constant");
      }
      if (pos < text.size() && text[pos] == 'x') {
        auto start = pos++;
        if (auto v = digits(); v && (pos == text.size() || text[pos] != '(')) {
          return Term::var(*v);
        }
        pos = start;
      }
      for (auto i : by_length) {
        auto const& sym = alg.symbol(i);
        if (sym.empty() || text.substr(pos, sym.size()) != sym) {
          continue;
        }
        pos += sym.size();
        std::vector<Term> args;
        if (alg.arity(i) > 0) {
          skip();
          if (pos >= text.size() || text[pos] != '(') {
            fail("expected '(' after " + sym);
          }
          ++pos;
          for (std::size_t k = 0; k < alg.arity(i); ++k) {
            if (k > 0) {
              skip();
              if (pos >= text.size() || text[pos] != ',') {
                fail("expected ','");
              }
              ++pos;
            }
            args.push_back(self(self));
          }
          skip();
          if (pos >= text.size() || text[pos] != ')') {
            fail("expected ')' closing " + sym);
          }
          ++pos;
        }
        return Term::apply(sym, std::move(args));
      }
      return fail("expected a variable, constant or operation symbol");
    };
    Term t = parse(parse);
    skip();
    if (pos != text.size()) {
      fail("trailing input");
    }
    return t;
  }

}  // namespace ualg
