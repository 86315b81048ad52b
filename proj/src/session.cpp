#include "nanoprover/session.hpp"

#include "nanoprover/printer.hpp"

namespace nanoprover {

using json = nlohmann::json;

namespace {

json error_body(const ProverError& e, std::optional<std::size_t> sentence = std::nullopt) {
  // request-level errors have no source location and report an empty range
  Span span = e.span().value_or(Span{});
  json err = {{"class", to_string(e.kind())}, {"message", e.message()}, {"from", span.from}, {"to", span.to}};
  if (sentence) err["sentence"] = *sentence;
  return err;
}

json failure(const json& id, const ProverError& e, std::optional<std::size_t> sentence = std::nullopt) {
  return {{"id", id}, {"ok", false}, {"error", error_body(e, sentence)}};
}

json sentence_json(std::size_t sid, const Sentence& s) {
  return {{"sid", sid}, {"from", s.span.from}, {"to", s.span.to}, {"kind", to_string(s.kind)}};
}

[[noreturn]] void stale(const std::string& msg) { throw ProverError(ErrorKind::StaleId, msg); }

}  // namespace

json goal_view(const DocumentState& st) {
  json view = {{"count", 0}, {"focused", json::array()}, {"shelved", 0}};
  if (!st.proof) return view;
  const ProofState& ps = st.proof->state;
  view["count"] = ps.goals.size();
  view["shelved"] = ps.unfocused_count();
  for (const Goal& g : ps.goals) {
    json hyps = json::array();
    Context prefix;
    for (const auto& h : g.hyps) {
      hyps.push_back({{"name", h.name}, {"type", pretty_print(st.env, h.type, prefix)}});
      prefix.push_back(h);
    }
    view["focused"].push_back({{"hyps", hyps}, {"concl", pretty_print(st.env, g.concl, g.hyps)}});
  }
  return view;
}

Session::Session(const Options& opts) { checkpoints_.push_back({initial_state(opts), {}}); }

json Session::add(const std::string& code) {
  doc_ += code;
  std::size_t start = tip();
  std::string_view rest(doc_);
  rest.remove_prefix(start);
  json added = json::array();
  std::size_t consumed = 0;
  std::vector<SentenceChunk> chunks;
  try {
    chunks = split_sentences(rest, true, &consumed);
  } catch (const ProverError& e) {
    doc_.resize(start);
    ProverError shifted(e.kind(), e.message(),
                        e.span() ? std::optional<Span>(Span{e.span()->from + start, e.span()->to + start}) : std::nullopt);
    return {{"ok", false}, {"sentences", added}, {"error", error_body(shifted)}};
  }
  for (auto chunk : chunks) {
    chunk.span.from += start;
    chunk.span.to += start;
    try {
      sentences_.push_back(parse_sentence(doc_, chunk));
    } catch (ProverError& e) {
      // The text from the bad sentence on is not kept.
      doc_.resize(chunk.span.from);
      e.set_span_if_missing(chunk.span);
      return {{"ok", false}, {"sentences", added}, {"error", error_body(e)}};
    }
    added.push_back(sentence_json(sentences_.size() - 1, sentences_.back()));
  }
  return {{"ok", true}, {"sentences", added}};
}

json Session::exec(long sid) {
  if (sid < -1 || sid >= static_cast<long>(sentences_.size()))
    stale("sentence " + std::to_string(sid) + " does not exist");
  std::size_t target = static_cast<std::size_t>(sid + 1);
  if (checkpoints_.size() > target + 1) checkpoints_.resize(target + 1);
  json messages = json::array();
  while (checkpoints_.size() < target + 1) {
    std::size_t i = checkpoints_.size() - 1;
    try {
      StepResult r = execute_sentence(checkpoints_.back().state, sentences_[i]);
      checkpoints_.push_back({std::move(r.state), std::move(r.messages)});
      for (const auto& m : checkpoints_.back().messages) messages.push_back(m);
    } catch (const ProverError& e) {
      json err = error_body(e, i);
      err["rendered"] = render_error(doc_, e);
      return {{"ok", false}, {"error", err}, {"goals", goal_view(current())}, {"messages", messages},
              {"executed", executed()}};
    }
  }
  return {{"ok", true}, {"goals", goal_view(current())}, {"messages", messages}, {"executed", executed()}};
}

json Session::cancel(long sid) {
  if (sid < 0 || static_cast<std::size_t>(sid) >= sentences_.size())
    stale("sentence " + std::to_string(sid) + " does not exist");
  std::size_t n = static_cast<std::size_t>(sid);
  doc_.resize(sentences_[n].span.from);
  sentences_.resize(n);
  if (checkpoints_.size() > n + 1) checkpoints_.resize(n + 1);
  return {{"ok", true}, {"goals", goal_view(current())}, {"executed", executed()}};
}

json Session::goals(long sid) const {
  if (sid < -1 || sid + 1 >= static_cast<long>(checkpoints_.size()))
    stale("sentence " + std::to_string(sid) + " has not been executed");
  const Checkpoint& c = checkpoints_[static_cast<std::size_t>(sid + 1)];
  return {{"ok", true}, {"goals", goal_view(c.state)}, {"messages", c.messages}};
}

json Session::handle(const json& request) {
  json id = request.is_object() && request.contains("id") ? request["id"] : json(nullptr);
  try {
    if (!request.is_object() || !request.contains("op") || !request["op"].is_string())
      throw ProverError(ErrorKind::ParseError, "a request is an object with an \"op\" field");
    const std::string op = request["op"].get<std::string>();
    auto sentence_arg = [&]() -> long {
      if (!request.contains("sentence") || !request["sentence"].is_number_integer())
        throw ProverError(ErrorKind::ParseError, op + " needs an integer \"sentence\" field");
      return request["sentence"].get<long>();
    };
    json out;
    if (op == "ping") {
      out = {{"ok", true}};
    } else if (op == "add") {
      if (!request.contains("code") || !request["code"].is_string())
        throw ProverError(ErrorKind::ParseError, "add needs a string \"code\" field");
      out = add(request["code"].get<std::string>());
    } else if (op == "exec") {
      out = exec(sentence_arg());
    } else if (op == "cancel") {
      out = cancel(sentence_arg());
    } else if (op == "goals") {
      out = goals(sentence_arg());
    } else {
      throw ProverError(ErrorKind::ParseError, "unknown op " + op);
    }
    out["id"] = id;
    return out;
  } catch (const ProverError& e) {
    return failure(id, e);
  } catch (const std::exception& e) {
    return failure(id, ProverError(ErrorKind::ExecutionError, e.what()));
  }
}

std::string Session::handle_line(std::string_view line) {
  json request;
  try {
    request = json::parse(line);
  } catch (const json::exception& e) {
    return failure(nullptr, ProverError(ErrorKind::ParseError, std::string("malformed JSON: ") + e.what())).dump();
  }
  return handle(request).dump(-1, ' ', false, json::error_handler_t::replace);
}

}  // namespace nanoprover
