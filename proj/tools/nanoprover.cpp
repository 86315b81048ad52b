#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "nanoprover/coursework.hpp"
#include "nanoprover/document.hpp"
#include "nanoprover/server.hpp"
#include "nanoprover/session.hpp"
#include "nanoprover/theories.hpp"

using namespace nanoprover;
namespace fs = std::filesystem;

namespace {

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Classes that mean the text itself is wrong, as opposed to a proof that
// does not go through.
bool is_static_error(ErrorKind k) {
  switch (k) {
    case ErrorKind::LexError:
    case ErrorKind::ParseError:
    case ErrorKind::UnsupportedSyntax:
    case ErrorKind::ElaborationError:
    case ErrorKind::UnboundName:
    case ErrorKind::IllTypedApplication:
    case ErrorKind::UniverseViolation:
    case ErrorKind::PositivityViolation:
    case ErrorKind::NonStructuralRecursion:
    case ErrorKind::DuplicateName:
    case ErrorKind::UnknownTheory:
    case ErrorKind::NestedTheorem:
    case ErrorKind::TacticOutsideProof:
      return true;
    default:
      return false;
  }
}

int run_check(const std::string& file, const Options& opts) {
  auto text = read_file(file);
  if (!text) {
    std::cerr << "error: cannot read " << file << "\n";
    return 2;
  }
  RunResult r = run_document(*text, initial_state(opts), true);
  bool static_error = !r.parsed_fully;
  for (const auto& d : r.diagnostics) {
    std::cerr << render_error(*text, d.error, file) << "\n";
    if (is_static_error(d.error.kind())) static_error = true;
  }
  for (const auto& m : r.messages) std::cout << m << "\n";
  bool all_qed = true;
  for (const auto& t : r.state.theorems) {
    const char* status = t.status == TheoremRecord::Status::Proved     ? "proved"
                         : t.status == TheoremRecord::Status::Admitted ? "admitted"
                                                                       : "failed";
    std::cout << t.name << ": " << status << "\n";
    if (t.status != TheoremRecord::Status::Proved) all_qed = false;
  }
  if (static_error) return 2;
  return all_qed && r.diagnostics.empty() ? 0 : 1;
}

int run_grade(const std::string& dir, const std::string& manifest_path, const std::string& out) {
  WorksheetManifest m;
  try {
    m = load_manifest(manifest_path);
  } catch (const ProverError& e) {
    std::cerr << "error[" << to_string(e.kind()) << "]: " << e.message() << "\n";
    return 2;
  }
  if (!fs::is_directory(dir)) {
    std::cerr << "error: " << dir << " is not a directory\n";
    return 2;
  }
  BatchResult b = batch_grade(dir, m);
  std::cout << render_table(b);
  if (!out.empty()) {
    std::ofstream o(out, std::ios::binary);
    if (!o) {
      std::cerr << "error: cannot write " << out << "\n";
      return 2;
    }
    o << to_json(b).dump(2) << "\n";
  }
  return 0;
}

int run_json_repl(const std::optional<std::string>& file, const Options& opts) {
  Session session(opts);
  if (file) {
    auto text = read_file(*file);
    if (!text) {
      std::cerr << "error: cannot read " << *file << "\n";
      return 2;
    }
    std::cout << session.handle({{"id", nullptr}, {"op", "add"}, {"code", *text}}).dump() << std::endl;
  }
  std::string line;
  while (std::getline(std::cin, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::cout << session.handle_line(line) << std::endl;
  }
  return 0;
}

void show_state(const Session& s) {
  const DocumentState& st = s.current();
  if (st.proof) std::cout << render_goals(st.env, st.proof->state);
  else std::cout << "(no open proof)\n";
}

int run_terminal_repl(const std::string& file, const Options& opts) {
  auto text = read_file(file);
  if (!text) {
    std::cerr << "error: cannot read " << file << "\n";
    return 2;
  }
  Session session(opts);
  auto added = session.handle({{"id", 0}, {"op", "add"}, {"code", *text}});
  if (!added["ok"].get<bool>()) {
    const auto& e = added["error"];
    std::cerr << "error[" << e["class"].get<std::string>() << "]: " << e["message"].get<std::string>() << "\n";
  }
  std::cout << session.sentence_count() << " sentences. Commands: n(ext), u(ndo), g(oals), q(uit).\n";
  std::string cmd;
  while (std::cout << "> " << std::flush, std::getline(std::cin, cmd)) {
    if (cmd == "q" || cmd == "quit") break;
    if (cmd == "g" || cmd == "goals") {
      show_state(session);
      continue;
    }
    long target;
    if (cmd == "n" || cmd == "next" || cmd.empty()) target = static_cast<long>(session.executed());
    else if (cmd == "u" || cmd == "undo") target = static_cast<long>(session.executed()) - 2;
    else {
      std::cout << "unknown command " << cmd << "\n";
      continue;
    }
    if (target >= static_cast<long>(session.sentence_count())) {
      std::cout << "end of file\n";
      continue;
    }
    if (target < -1) {
      std::cout << "at the start of the file\n";
      continue;
    }
    auto r = session.handle({{"id", 0}, {"op", "exec"}, {"sentence", target}});
    if (target >= 0) {
      const Span sp = session.sentences()[static_cast<std::size_t>(target)].span;
      std::cout << "[" << target << "] " << session.text().substr(sp.from, sp.to - sp.from) << "\n";
    }
    for (const auto& m : r["messages"]) std::cout << m.get<std::string>() << "\n";
    if (!r["ok"].get<bool>()) {
      const auto& e = r["error"];
      std::cout << e.value("rendered", e["message"].get<std::string>()) << "\n";
    }
    show_state(session);
  }
  return 0;
}

int run_serve(const std::string& addr, const std::string& ui_root, const Options& opts) {
  ServeOptions so;
  try {
    auto [host, port] = parse_address(addr);
    so.host = host;
    so.port = port;
  } catch (const ProverError& e) {
    std::cerr << "error: " << e.message() << "\n";
    return 2;
  }
  so.ui_root = ui_root;
  so.prover = opts;
  Server server(so);
  try {
    server.start();
  } catch (const std::exception& e) {
    std::cerr << "error: cannot listen on " << addr << ": " << e.what() << "\n";
    return 2;
  }
  std::cout << "listening on http://" << so.host << ":" << server.port() << "/ (WebSocket on any path, UI under /ui/";
  if (ui_root.empty()) std::cout << ", no --ui-root given";
  std::cout << ")" << std::endl;
  server.wait();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nanoprover: a small proof assistant for a Coq fragment"};
  app.require_subcommand(1);
  Options opts;
  app.add_flag("--classical", opts.classical, "load the excluded middle (classic) from the start");
  app.add_flag("--printing-parentheses", opts.printing_parentheses, "fully parenthesize infix notations");

  std::string file;
  auto* check = app.add_subcommand("check", "run a file; exit 0 iff every theorem ends with Qed");
  check->add_option("FILE", file, "source file")->required();

  std::string dir, manifest, out;
  auto* grade = app.add_subcommand("grade", "grade every .nv submission of a directory");
  grade->add_option("DIR", dir, "directory of submissions")->required();
  grade->add_option("--manifest", manifest, "worksheet manifest (JSON)")->required();
  grade->add_option("--out", out, "write the JSON report here");

  std::string repl_file;
  bool json_mode = false;
  auto* repl = app.add_subcommand("repl", "step through a file, or speak the JSON protocol on stdio with --json");
  repl->add_option("FILE", repl_file, "source file");
  repl->add_flag("--json", json_mode, "newline-delimited JSON requests on stdin");

  std::string addr = "127.0.0.1:8765";
  std::string ui_root;
  if (const char* env = std::getenv("NANOPROVER_UI_ROOT")) ui_root = env;
  auto* serve = app.add_subcommand("serve", "HTTP/WebSocket session service");
  serve->add_option("--addr", addr, "HOST:PORT to bind")->capture_default_str();
  serve->add_option("--ui-root", ui_root, "directory served under /ui/");

  std::string prelude;
  auto* exp = app.add_subcommand("export-prelude", "print the source of a bundled theory");
  exp->add_option("NAME", prelude, "Nat, Reals or Classical")->required();

  CLI11_PARSE(app, argc, argv);

  if (*check) return run_check(file, opts);
  if (*grade) return run_grade(dir, manifest, out);
  if (*repl) {
    if (json_mode) return run_json_repl(repl_file.empty() ? std::nullopt : std::optional<std::string>(repl_file), opts);
    if (repl_file.empty()) {
      std::cerr << "error: repl needs FILE unless --json is given\n";
      return 2;
    }
    return run_terminal_repl(repl_file, opts);
  }
  if (*serve) return run_serve(addr, ui_root, opts);
  if (*exp) {
    try {
      std::cout << prelude_source(prelude);
    } catch (const ProverError& e) {
      std::cerr << "error[" << to_string(e.kind()) << "]: " << e.message() << " (known: Nat, Reals, Classical)\n";
      return 2;
    }
    return 0;
  }
  return 0;
}
