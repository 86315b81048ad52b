#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "nanoprover/document.hpp"

namespace nanoprover {

// GoalView payload: {"count", "focused": [{"hyps": [{"name", "type"}], "concl"}], "shelved"}.
nlohmann::json goal_view(const DocumentState& st);

// One interactive document. Requests are JSON objects
//   {"id": int, "op": "add"|"exec"|"cancel"|"goals"|"ping", "code"?: string, "sentence"?: int}
// and every request gets exactly one response object.
//
// add     appends text; complete sentences get ids (dense, in document order),
//         an unterminated tail waits for the next add.
// exec    moves the execution cursor to just after `sentence`, running or
//         rolling back as needed; -1 rewinds to the start.
// cancel  drops `sentence` and everything after it, text included.
// goals   GoalView after an already executed sentence (-1: before the first).
class Session {
 public:
  explicit Session(const Options& opts = {});

  nlohmann::json handle(const nlohmann::json& request);
  // Total: malformed input yields an error response.
  std::string handle_line(std::string_view line);

  const std::string& text() const { return doc_; }
  std::size_t sentence_count() const { return sentences_.size(); }
  // Number of sentences executed so far.
  std::size_t executed() const { return checkpoints_.size() - 1; }
  const DocumentState& current() const { return checkpoints_.back().state; }
  const std::vector<Sentence>& sentences() const { return sentences_; }

 private:
  struct Checkpoint {
    DocumentState state;
    std::vector<std::string> messages;
  };

  nlohmann::json add(const std::string& code);
  nlohmann::json exec(long sid);
  nlohmann::json cancel(long sid);
  nlohmann::json goals(long sid) const;
  std::size_t tip() const { return sentences_.empty() ? 0 : sentences_.back().span.to; }

  std::string doc_;
  std::vector<Sentence> sentences_;
  std::vector<Checkpoint> checkpoints_;  // [0] initial, [i + 1] after sentence i
};

}  // namespace nanoprover
