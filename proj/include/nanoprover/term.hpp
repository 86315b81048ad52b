#pragma once

#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace nanoprover {

enum class Sort { Prop, Type };

class Term;
struct TermBuilder;
using TermPtr = std::shared_ptr<const Term>;

struct MatchBranch {
  std::string constructor;
  std::vector<std::string> vars;
  TermPtr body;
};

// Immutable term of the object language. Binders carry names; non-dependent
// products use the anonymous binder "_".
//
// Field usage per kind:
//   Pi, Lam, Ex : name = binder, a = domain, b = body
//   App         : a = function, b = argument
//   And, Or     : a = left, b = right
//   Eq          : a = carrier type, b = lhs, c = rhs
//   Match       : a = scrutinee, b = result type, branches
//   Meta        : meta_id (unification holes; never in a finished goal)
class Term {
 public:
  enum class Kind { Var, Const, Sort, Pi, Lam, App, Match, And, Or, Ex, Eq, False, True, Meta };

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  Sort sort() const { return sort_; }
  int meta_id() const { return meta_id_; }

  const TermPtr& domain() const { return a_; }
  const TermPtr& body() const { return b_; }
  const TermPtr& fn() const { return a_; }
  const TermPtr& arg() const { return b_; }
  const TermPtr& left() const { return a_; }
  const TermPtr& right() const { return b_; }
  const TermPtr& eq_type() const { return a_; }
  const TermPtr& lhs() const { return b_; }
  const TermPtr& rhs() const { return c_; }
  const TermPtr& scrutinee() const { return a_; }
  const TermPtr& return_type() const { return b_; }
  const std::vector<MatchBranch>& branches() const { return branches_; }

  bool is(Kind k) const { return kind_ == k; }
  bool is_binder() const { return kind_ == Kind::Pi || kind_ == Kind::Lam || kind_ == Kind::Ex; }

  static TermPtr var(std::string name);
  static TermPtr constant(std::string name);
  static TermPtr sort(Sort s);
  static TermPtr pi(std::string binder, TermPtr domain, TermPtr body);
  static TermPtr arrow(TermPtr domain, TermPtr codomain);
  static TermPtr lam(std::string binder, TermPtr domain, TermPtr body);
  static TermPtr app(TermPtr fn, TermPtr arg);
  static TermPtr apps(TermPtr fn, const std::vector<TermPtr>& args);
  static TermPtr match(TermPtr scrutinee, TermPtr return_type, std::vector<MatchBranch> branches);
  static TermPtr conj(TermPtr l, TermPtr r);
  static TermPtr disj(TermPtr l, TermPtr r);
  static TermPtr ex(std::string binder, TermPtr domain, TermPtr body);
  static TermPtr eq(TermPtr type, TermPtr lhs, TermPtr rhs);
  static TermPtr falsity();
  static TermPtr truth();
  static TermPtr neg(TermPtr p);
  static TermPtr meta(int id);

  // Rebuilds a binder node of the same kind with new parts.
  static TermPtr rebuild_binder(const Term& original, std::string binder, TermPtr domain, TermPtr body);

 private:
  friend struct TermBuilder;

  Kind kind_ = Kind::Var;
  std::string name_;
  Sort sort_ = Sort::Prop;
  int meta_id_ = -1;
  TermPtr a_, b_, c_;
  std::vector<MatchBranch> branches_;
};

inline constexpr const char* kAnonymous = "_";

// Head and arguments of an application spine: f a1 .. an.
struct Spine {
  TermPtr head;
  std::vector<TermPtr> args;
};
Spine spine(const TermPtr& t);

// True for `P -> False`, the encoding of `~P`.
bool is_negation(const TermPtr& t);

std::set<std::string> free_vars(const TermPtr& t);
bool occurs_free(const std::string& x, const TermPtr& t);
bool contains_meta(const TermPtr& t);
bool mentions_constant(const TermPtr& t, const std::string& name);
void collect_constants(const TermPtr& t, std::set<std::string>& out);

// A variant of `base` that is not in `avoid`. Returns `base` itself when free.
std::string fresh_name(const std::string& base, const std::set<std::string>& avoid);
// Numbered variant used for generated hypothesis names: H, H0, H1, ...
std::string fresh_numbered(const std::string& base, const std::set<std::string>& avoid);
// Always suffixed: base0, base1, ...
std::string fresh_indexed(const std::string& base, const std::set<std::string>& avoid);

// Capture-avoiding substitution of v for the free occurrences of x in t.
TermPtr substitute(const TermPtr& t, const std::string& x, const TermPtr& v);
// Simultaneous capture-avoiding substitution.
TermPtr substitute_many(const TermPtr& t, const std::map<std::string, TermPtr>& s);
// Replaces metavariables by their assignments (recursively).
TermPtr instantiate_metas(const TermPtr& t, const std::map<int, TermPtr>& assignment);

bool alpha_equal(const TermPtr& t1, const TermPtr& t2);

// Replaces every subterm alpha-equal to `pattern` by `replacement`, skipping
// positions where a binder would capture a free variable of the pattern.
// `count` receives the number of replaced occurrences.
TermPtr replace_all(const TermPtr& t, const TermPtr& pattern, const TermPtr& replacement, int* count = nullptr);

// Generic structural map over the immediate children.
TermPtr map_children(const TermPtr& t, const std::function<TermPtr(const TermPtr&)>& f);

}  // namespace nanoprover
