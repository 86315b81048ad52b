#include "nanoprover/server.hpp"

#include <boost/asio/ip/tcp.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>
#include <atomic>
#include <condition_variable>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "nanoprover/session.hpp"

namespace nanoprover {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;

namespace {

std::string mime_type(const std::filesystem::path& p) {
  std::string ext = p.extension().string();
  if (ext == ".html" || ext == ".htm") return "text/html; charset=utf-8";
  if (ext == ".js" || ext == ".mjs") return "text/javascript; charset=utf-8";
  if (ext == ".css") return "text/css; charset=utf-8";
  if (ext == ".json") return "application/json";
  if (ext == ".svg") return "image/svg+xml";
  if (ext == ".png") return "image/png";
  if (ext == ".nv" || ext == ".txt") return "text/plain; charset=utf-8";
  return "application/octet-stream";
}

http::response<http::string_body> text_response(http::status status, unsigned version, std::string body,
                                                 bool keep_alive) {
  http::response<http::string_body> res{status, version};
  res.set(http::field::server, "nanoprover");
  res.set(http::field::content_type, "text/plain; charset=utf-8");
  res.keep_alive(keep_alive);
  res.body() = std::move(body);
  res.prepare_payload();
  return res;
}

http::response<http::string_body> static_file(const std::filesystem::path& root,
                                              const http::request<http::string_body>& req) {
  std::string target(req.target());
  if (auto q = target.find('?'); q != std::string::npos) target.resize(q);
  if (target == "/" || target == "/ui") {
    auto res = text_response(http::status::found, req.version(), "", req.keep_alive());
    res.set(http::field::location, "/ui/");
    return res;
  }
  if (target.rfind("/ui/", 0) != 0) return text_response(http::status::not_found, req.version(), "not found\n", req.keep_alive());
  std::string rel = target.substr(4);
  if (rel.empty() || rel.back() == '/') rel += "index.html";
  std::filesystem::path p = std::filesystem::path(rel).lexically_normal();
  if (root.empty() || p.is_absolute() || (!p.empty() && *p.begin() == ".."))
    return text_response(http::status::not_found, req.version(), "not found\n", req.keep_alive());
  std::ifstream in(root / p, std::ios::binary);
  if (!in) return text_response(http::status::not_found, req.version(), "not found\n", req.keep_alive());
  std::stringstream ss;
  ss << in.rdbuf();
  auto res = text_response(http::status::ok, req.version(), ss.str(), req.keep_alive());
  res.set(http::field::content_type, mime_type(p));
  res.prepare_payload();
  return res;
}

void run_websocket(tcp::socket socket, http::request<http::string_body> req, Options prover) {
  websocket::stream<tcp::socket> ws(std::move(socket));
  ws.accept(req);
  Session session(prover);
  beast::flat_buffer buffer;
  for (;;) {
    beast::error_code ec;
    ws.read(buffer, ec);
    if (ec) return;
    std::string line = beast::buffers_to_string(buffer.data());
    buffer.consume(buffer.size());
    ws.text(true);
    ws.write(asio::buffer(session.handle_line(line)), ec);
    if (ec) return;
  }
}

void handle_connection(tcp::socket socket, std::filesystem::path root, Options prover) {
  try {
    beast::flat_buffer buffer;
    for (;;) {
      http::request<http::string_body> req;
      beast::error_code ec;
      http::read(socket, buffer, req, ec);
      if (ec) return;
      if (websocket::is_upgrade(req)) {
        run_websocket(std::move(socket), std::move(req), prover);
        return;
      }
      auto res = req.method() == http::verb::get || req.method() == http::verb::head
                     ? static_file(root, req)
                     : text_response(http::status::method_not_allowed, req.version(), "GET only\n", false);
      http::write(socket, res, ec);
      if (ec || !res.keep_alive()) return;
    }
  } catch (const std::exception&) {
    // the peer went away
  }
}

}  // namespace

struct Server::Impl {
  ServeOptions opts;
  asio::io_context io;
  tcp::acceptor acceptor{io};
  std::thread thread;
  std::mutex mu;
  std::condition_variable cv;
  bool stopped = false;
  std::atomic<bool> stopping{false};
  unsigned short bound_port = 0;
};

Server::Server(ServeOptions opts) : impl_(std::make_unique<Impl>()) { impl_->opts = std::move(opts); }

Server::~Server() { stop(); }

void Server::start() {
  Impl& s = *impl_;
  tcp::endpoint ep(asio::ip::make_address(s.opts.host), s.opts.port);
  s.acceptor.open(ep.protocol());
  s.acceptor.set_option(asio::socket_base::reuse_address(true));
  s.acceptor.bind(ep);
  s.acceptor.listen();
  s.bound_port = s.acceptor.local_endpoint().port();
  s.thread = std::thread([&s] {
    for (;;) {
      beast::error_code ec;
      tcp::socket sock(s.io);
      s.acceptor.accept(sock, ec);
      if (s.stopping) return;
      if (ec) {
        if (!s.acceptor.is_open()) return;
        continue;
      }
      std::thread(handle_connection, std::move(sock), s.opts.ui_root, s.opts.prover).detach();
    }
  });
}

unsigned short Server::port() const { return impl_->bound_port; }

void Server::stop() {
  Impl& s = *impl_;
  {
    std::lock_guard lock(s.mu);
    if (s.stopped) return;
    s.stopped = true;
  }
  beast::error_code ec;
  s.stopping = true;
  if (s.thread.joinable()) {
    // Closing the acceptor does not wake a blocked accept; connect to it instead.
    tcp::socket poke(s.io);
    std::string host = s.opts.host == "0.0.0.0" ? "127.0.0.1" : s.opts.host == "::" ? "::1" : s.opts.host;
    poke.connect(tcp::endpoint(asio::ip::make_address(host), s.bound_port), ec);
    s.thread.join();
  }
  s.acceptor.close(ec);
  s.cv.notify_all();
}

void Server::wait() {
  std::unique_lock lock(impl_->mu);
  impl_->cv.wait(lock, [this] { return impl_->stopped; });
}

std::pair<std::string, unsigned short> parse_address(const std::string& addr) {
  auto colon = addr.rfind(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == addr.size())
    throw ProverError(ErrorKind::ParseError, "expected HOST:PORT, got " + addr);
  std::string host = addr.substr(0, colon);
  unsigned long port = 0;
  try {
    std::size_t used = 0;
    port = std::stoul(addr.substr(colon + 1), &used);
    if (used != addr.size() - colon - 1) throw std::invalid_argument("port");
  } catch (const std::exception&) {
    throw ProverError(ErrorKind::ParseError, "bad port in " + addr);
  }
  if (port > 65535) throw ProverError(ErrorKind::ParseError, "bad port in " + addr);
  return {host, static_cast<unsigned short>(port)};
}

}  // namespace nanoprover
