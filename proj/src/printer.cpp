#include "nanoprover/printer.hpp"

#include <map>
#include <optional>
#include <set>

#include "nanoprover/elaborate.hpp"
#include "nanoprover/errors.hpp"

namespace nanoprover {

using K = Term::Kind;

namespace {

enum class Assoc { Left, Right, None };

struct Infix {
  const char* op;
  int level;
  Assoc assoc;
};

const std::map<std::string, Infix, std::less<>>& infix_table() {
  static const std::map<std::string, Infix, std::less<>> table = {
      {"add", {"+", 50, Assoc::Left}},    {"Rplus", {"+", 50, Assoc::Left}},  {"Rminus", {"-", 50, Assoc::Left}},
      {"mul", {"*", 40, Assoc::Left}},    {"Rmult", {"*", 40, Assoc::Left}},  {"Rdiv", {"/", 40, Assoc::Left}},
      {"pow", {"^", 30, Assoc::Right}},   {"Rpow", {"^", 30, Assoc::Right}},   {"lt", {"<", 70, Assoc::None}},     {"Rlt", {"<", 70, Assoc::None}},
      {"le", {"<=", 70, Assoc::None}},    {"Rle", {"<=", 70, Assoc::None}},   {"gt", {">", 70, Assoc::None}},
      {"Rgt", {">", 70, Assoc::None}},    {"ge", {">=", 70, Assoc::None}},    {"Rge", {">=", 70, Assoc::None}},
      {"iff", {"<->", 100, Assoc::None}},
  };
  return table;
}

const std::map<std::string, const char*, std::less<>>& prefix_table() {
  static const std::map<std::string, const char*, std::less<>> table = {{"Ropp", "-"}, {"Rinv", "/"}};
  return table;
}

constexpr int kBinderLevel = 200;
constexpr int kAppLevel = 10;

std::optional<long> nat_numeral(const TermPtr& t) {
  long n = 0;
  TermPtr cur = t;
  while (cur->is(K::App) && cur->fn()->is(K::Const) && cur->fn()->name() == "S") {
    ++n;
    cur = cur->arg();
  }
  if (cur->is(K::Const) && cur->name() == "O") return n;
  return std::nullopt;
}

bool is_dependent_pi(const TermPtr& t) { return t->is(K::Pi) && occurs_free(t->name(), t->body()); }

class Printer {
 public:
  Printer(bool parens, const std::set<int>* omitted) : parens_(parens), omitted_(omitted) {}

  std::string top(const TermPtr& t) { return render(t, true); }
  int binder_count() const { return counter_; }

 private:
  int level_of(const TermPtr& t) const {
    switch (t->kind()) {
      case K::App: {
        if (nat_numeral(t)) return 0;
        Spine s = spine(t);
        if (s.head->is(K::Const)) {
          if (s.args.size() == 2) {
            auto it = infix_table().find(s.head->name());
            if (it != infix_table().end()) return it->second.level;
          }
          if (s.args.size() == 1 && prefix_table().contains(s.head->name())) return 35;
          if (s.args.size() == 1 && s.head->name() == "Rsqr") return 1;
        }
        return kAppLevel;
      }
      case K::Pi:
        if (is_dependent_pi(t)) return kBinderLevel;
        if (is_negation(t)) return t->domain()->is(K::Eq) ? 70 : 75;
        return 99;
      case K::Lam: case K::Ex: return kBinderLevel;
      case K::And: return 80;
      case K::Or: return 85;
      case K::Eq: return 70;
      default: return 0;
    }
  }

  static bool is_binder_like(const TermPtr& t) {
    return t->is(K::Lam) || t->is(K::Ex) || is_dependent_pi(t);
  }

  bool is_notation(int level) const { return level != 0 && level != kAppLevel && level != kBinderLevel; }

  std::string operand(const TermPtr& t, int max_level, bool rightmost, bool in_notation) {
    int lvl = level_of(t);
    bool wrap = lvl > max_level;
    if (wrap && rightmost && is_binder_like(t)) wrap = false;
    if (parens_ && in_notation && is_notation(lvl)) wrap = true;
    if (wrap) return "(" + render(t, true) + ")";
    return render(t, rightmost);
  }

  std::string infix(const std::string& op, const TermPtr& l, const TermPtr& r, int level, Assoc assoc,
                    bool rightmost) {
    int ll = assoc == Assoc::Left ? level : level - 1;
    int rl = assoc == Assoc::Right ? level : level - 1;
    return operand(l, ll, false, true) + " " + op + " " + operand(r, rl, rightmost, true);
  }

  // Binder group: consecutive binders of the same kind sharing annotation.
  std::string binders(const TermPtr& t, const char* keyword, const char* separator) {
    std::vector<std::string> names;
    TermPtr cur = t;
    TermPtr type;
    bool omit = false;
    while (true) {
      int index = counter_++;
      bool this_omit = omitted_ && omitted_->contains(index);
      if (names.empty()) {
        type = cur->domain();
        omit = this_omit;
      }
      names.push_back(cur->name());
      TermPtr next = cur->body();
      bool same_kind = next->kind() == t->kind() && (!t->is(K::Pi) || is_dependent_pi(next));
      if (!same_kind) break;
      bool next_omit = omitted_ && omitted_->contains(counter_);
      if (next_omit != omit || (!omit && !alpha_equal(next->domain(), type))) break;
      // The group shares one annotation; the type must not mention earlier names.
      if (!omit) {
        bool mentions = false;
        for (const auto& n : names) mentions = mentions || occurs_free(n, next->domain());
        if (mentions) break;
      }
      cur = next;
    }
    std::string out = keyword;
    for (const auto& n : names) out += " " + n;
    if (!omit) out += " : " + render(type, true);
    out += separator;
    out += render(cur->body(), true);
    return out;
  }

  std::string render(const TermPtr& t, bool rightmost) {
    switch (t->kind()) {
      case K::Var: return t->name();
      case K::Const:
        if (t->name() == "O") return "0";
        return t->name();
      case K::Sort: return t->sort() == Sort::Prop ? "Prop" : "Type";
      case K::True: return "True";
      case K::False: return "False";
      case K::Meta: return "?" + std::to_string(t->meta_id());
      case K::App: {
        if (auto n = nat_numeral(t)) return std::to_string(*n);
        Spine s = spine(t);
        if (s.head->is(K::Const)) {
          const std::string& f = s.head->name();
          if (s.args.size() == 2) {
            auto it = infix_table().find(f);
            if (it != infix_table().end())
              return infix(it->second.op, s.args[0], s.args[1], it->second.level, it->second.assoc, rightmost);
          }
          if (s.args.size() == 1) {
            auto it = prefix_table().find(f);
            if (it != prefix_table().end()) return std::string(it->second) + " " + operand(s.args[0], 35, rightmost, true);
            if (f == "Rsqr") return operand(s.args[0], 0, false, true) + "²";
          }
        }
        std::string out = operand(s.head, kAppLevel, false, false);
        for (const auto& a : s.args) out += " " + operand(a, kAppLevel - 1, false, false);
        return out;
      }
      case K::Pi:
        if (is_dependent_pi(t)) return binders(t, "forall", ", ");
        if (is_negation(t)) {
          if (t->domain()->is(K::Eq)) {
            const auto& e = t->domain();
            return operand(e->lhs(), 69, false, true) + " <> " + operand(e->rhs(), 69, rightmost, true);
          }
          return "~ " + operand(t->domain(), 75, false, true);
        }
        return infix("->", t->domain(), t->body(), 99, Assoc::Right, rightmost);
      case K::Lam: return binders(t, "fun", " => ");
      case K::Ex: return binders(t, "exists", ", ");
      case K::And: return infix("/\\", t->left(), t->right(), 80, Assoc::Right, rightmost);
      case K::Or: return infix("\\/", t->left(), t->right(), 85, Assoc::Right, rightmost);
      case K::Eq: return infix("=", t->lhs(), t->rhs(), 70, Assoc::None, rightmost);
      case K::Match: {
        std::string out = "match " + render(t->scrutinee(), true) + " with";
        for (const auto& b : t->branches()) {
          out += " | ";
          out += b.constructor == "O" ? "0" : b.constructor;
          for (const auto& v : b.vars) out += " " + v;
          out += " => " + render(b.body, true);
        }
        return out + " end";
      }
    }
    return "?";
  }

  bool parens_;
  const std::set<int>* omitted_;
  int counter_ = 0;
};

thread_local bool g_in_roundtrip_check = false;

struct RoundtripGuard {
  RoundtripGuard() { g_in_roundtrip_check = true; }
  ~RoundtripGuard() { g_in_roundtrip_check = false; }
};

bool reparses_to(const Environment& env, const Context& ctx, const std::string& text, const TermPtr& t) {
  try {
    return alpha_equal(elaborate_term_text(env, ctx, text), t);
  } catch (const ProverError&) {
    return false;
  }
}

}  // namespace

std::string pretty_print_annotated(const Environment& env, const TermPtr& t) {
  return Printer(env.printing_parentheses(), nullptr).top(t);
}

std::string pretty_print(const Environment& env, const TermPtr& t, const Context& ctx) {
  if (g_in_roundtrip_check || contains_meta(t)) return pretty_print_annotated(env, t);
  std::set<int> omitted;
  Printer probe(env.printing_parentheses(), &omitted);
  std::string best = probe.top(t);
  int binders = probe.binder_count();
  if (binders == 0) return best;
  RoundtripGuard guard;
  for (int i = 0; i < binders; ++i) {
    omitted.insert(i);
    std::string candidate = Printer(env.printing_parentheses(), &omitted).top(t);
    if (reparses_to(env, ctx, candidate, t)) {
      best = candidate;
    } else {
      omitted.erase(i);
    }
  }
  return best;
}

}  // namespace nanoprover
