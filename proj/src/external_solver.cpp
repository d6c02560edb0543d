#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <sstream>

#include "lcpat/errors.hpp"
#include "lcpat/smtlib.hpp"
#include "lcpat/theory.hpp"
#include "solver_internal.hpp"

namespace lcpat {

namespace {

constexpr const char* kEndMarker = "lcpat-end";

std::vector<std::string> split_words(const std::string& cmd) {
  std::istringstream is(cmd);
  std::vector<std::string> out;
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

std::string declarations(const VarSet& xs) {
  std::string out;
  for (const auto& v : xs) {
    out += "(declare-const " + smtlib_symbol(v.name) + ' ' +
           (v.sort == Sort::Int() ? "Int" : "Bool") + ")\n";
  }
  return out;
}

std::string binders(const VarSet& xs) {
  std::string out;
  for (const auto& v : xs) {
    out += "(" + smtlib_symbol(v.name) + ' ' + (v.sort == Sort::Int() ? "Int" : "Bool") + ")";
  }
  return out;
}

}  // namespace

ExternalSolver::ExternalSolver(std::string command, int timeout_ms)
    : command_(std::move(command)), timeout_ms_(timeout_ms) {}

ExternalSolver::~ExternalSolver() { stop(); }

void ExternalSolver::start() {
  auto argv_words = split_words(command_);
  if (argv_words.empty()) throw SolverUnavailable("no external solver command configured");
  // Writes to a dead solver must surface as EPIPE, not terminate the process.
  ::signal(SIGPIPE, SIG_IGN);
  int in_pipe[2], out_pipe[2], err_pipe[2];
  if (::pipe(in_pipe) != 0) throw SolverUnavailable("pipe failed");
  if (::pipe(out_pipe) != 0) {
    ::close(in_pipe[0]);
    ::close(in_pipe[1]);
    throw SolverUnavailable("pipe failed");
  }
  if (::pipe2(err_pipe, O_CLOEXEC) != 0) {
    for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1]}) ::close(fd);
    throw SolverUnavailable("pipe failed");
  }
  pid_t pid = ::fork();
  if (pid < 0) {
    for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1], err_pipe[0], err_pipe[1]})
      ::close(fd);
    throw SolverUnavailable("fork failed");
  }
  if (pid == 0) {
    ::dup2(in_pipe[0], STDIN_FILENO);
    ::dup2(out_pipe[1], STDOUT_FILENO);
    int devnull = ::open("/dev/null", O_WRONLY);
    if (devnull >= 0) ::dup2(devnull, STDERR_FILENO);
    ::close(in_pipe[0]);
    ::close(in_pipe[1]);
    ::close(out_pipe[0]);
    ::close(out_pipe[1]);
    ::close(err_pipe[0]);
    std::vector<char*> argv;
    for (auto& w : argv_words) argv.push_back(w.data());
    argv.push_back(nullptr);
    ::execvp(argv[0], argv.data());
    int e = errno;
    ssize_t ignored = ::write(err_pipe[1], &e, sizeof e);
    (void)ignored;
    ::_exit(127);
  }
  ::close(in_pipe[0]);
  ::close(out_pipe[1]);
  ::close(err_pipe[1]);
  int child_errno = 0;
  ssize_t n = ::read(err_pipe[0], &child_errno, sizeof child_errno);
  ::close(err_pipe[0]);
  if (n == static_cast<ssize_t>(sizeof child_errno)) {
    ::close(in_pipe[1]);
    ::close(out_pipe[0]);
    ::waitpid(pid, nullptr, 0);
    throw SolverUnavailable("cannot run '" + argv_words[0] + "': " + std::strerror(child_errno));
  }
  pid_ = pid;
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];
  buffer_.clear();
}

void ExternalSolver::stop() {
  if (to_child_ >= 0) ::close(to_child_);
  if (from_child_ >= 0) ::close(from_child_);
  if (pid_ > 0) {
    ::kill(pid_, SIGKILL);
    ::waitpid(pid_, nullptr, 0);
  }
  pid_ = to_child_ = from_child_ = -1;
  buffer_.clear();
}

std::optional<std::vector<std::string>> ExternalSolver::round_trip(const std::string& commands) {
  if (pid_ < 0) start();
  std::string payload = commands + "\n(echo \"" + kEndMarker + "\")\n";
  std::size_t off = 0;
  while (off < payload.size()) {
    ssize_t w = ::write(to_child_, payload.data() + off, payload.size() - off);
    if (w < 0) {
      if (errno == EINTR) continue;
      stop();
      throw SolverUnavailable("external solver closed its input");
    }
    off += static_cast<std::size_t>(w);
  }
  ++solver_stats().external_queries;
  auto deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(timeout_ms_);
  std::vector<std::string> lines;
  for (;;) {
    std::size_t nl;
    while ((nl = buffer_.find('\n')) != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line == kEndMarker) return lines;
      lines.push_back(line);
    }
    auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
                    deadline - std::chrono::steady_clock::now())
                    .count();
    if (left <= 0) {
      stop();
      return std::nullopt;
    }
    pollfd pfd{from_child_, POLLIN, 0};
    int pr = ::poll(&pfd, 1, static_cast<int>(left));
    if (pr < 0) {
      if (errno == EINTR) continue;
      stop();
      throw ProtocolError("poll failed");
    }
    if (pr == 0) continue;
    char buf[4096];
    ssize_t r = ::read(from_child_, buf, sizeof buf);
    if (r < 0) {
      if (errno == EINTR) continue;
      stop();
      throw ProtocolError("read from external solver failed");
    }
    if (r == 0) {
      stop();
      throw SolverUnavailable("external solver exited unexpectedly");
    }
    buffer_.append(buf, static_cast<std::size_t>(r));
  }
}

namespace {

std::string verdict_line(const std::vector<std::string>& lines) {
  for (const auto& l : lines) {
    if (l == "sat" || l == "unsat" || l == "unknown") return l;
    if (l.rfind("(error", 0) == 0) throw ProtocolError("external solver: " + l);
  }
  throw ProtocolError("external solver gave no verdict");
}

}  // namespace

SatResult ExternalSolver::check_sat(const Term& phi) {
  std::string body = smtlib_term(phi);
  std::string script = "(reset)\n(set-option :produce-models true)\n(set-logic QF_LIA)\n" +
                       declarations(vars(phi)) + "(assert " + body + ")\n(check-sat)";
  auto out = round_trip(script);
  if (!out) return detail::record(SatResult::unknown("timeout"));
  std::string v = verdict_line(*out);
  if (v == "unsat") return detail::record(SatResult::unsat());
  if (v == "unknown") return detail::record(SatResult::unknown("external solver returned unknown"));
  auto model_lines = round_trip("(get-model)");
  if (!model_lines) return detail::record(SatResult::unknown("timeout"));
  std::string text;
  for (const auto& l : *model_lines) text += l + "\n";
  return detail::validated(phi, parse_model(text, vars(phi)));
}

EquivVerdict ExternalSolver::check_equiv(const Term& phi, const Term& psi, const VarSet& ex_phi,
                                         const VarSet& ex_psi) {
  auto closed = [](const Term& t, const VarSet& ex) {
    std::string body = smtlib_term(t);
    VarSet used;
    for (const auto& v : vars(t))
      if (ex.count(v)) used.insert(v);
    if (used.empty()) return body;
    return "(exists (" + binders(used) + ") " + body + ")";
  };
  VarSet free;
  for (const auto& v : vars(phi))
    if (!ex_phi.count(v)) free.insert(v);
  for (const auto& v : vars(psi))
    if (!ex_psi.count(v)) free.insert(v);
  std::string script = "(reset)\n(set-logic LIA)\n" + declarations(free) + "(assert (not (= " +
                       closed(phi, ex_phi) + " " + closed(psi, ex_psi) + ")))\n(check-sat)";
  auto out = round_trip(script);
  if (!out) return EquivVerdict::Unknown;
  std::string v = verdict_line(*out);
  if (v == "unsat") return EquivVerdict::Equiv;
  if (v == "sat") return EquivVerdict::NotEquiv;
  return EquivVerdict::Unknown;
}

// ---------------------------------------------------------------------------
// Solver front end

Solver::Solver(SolverConfig cfg) : cfg_(std::move(cfg)) {}
Solver::~Solver() = default;
Solver::Solver(Solver&&) noexcept = default;
Solver& Solver::operator=(Solver&&) noexcept = default;

ExternalSolver& Solver::external() {
  if (!ext_) ext_ = std::make_unique<ExternalSolver>(cfg_.external_cmd, cfg_.timeout_ms);
  return *ext_;
}

SatResult Solver::check_sat(const Term& phi) {
  SatResult last = SatResult::unknown("no backend configured");
  for (Backend b : cfg_.order) {
    if (b == Backend::Builtin) {
      last = builtin_sat(phi);
    } else {
      if (!has_external()) {
        if (cfg_.order.size() == 1) throw SolverUnavailable("no external solver command configured");
        continue;
      }
      try {
        last = external().check_sat(phi);
      } catch (const UnsupportedSymbol& e) {
        last = SatResult::unknown(e.what());
      }
    }
    if (!last.is_unknown()) return last;
  }
  return last;
}

EquivVerdict Solver::check_equiv(const Term& phi, const Term& psi, const VarSet& ex_phi,
                                 const VarSet& ex_psi) {
  EquivVerdict last = EquivVerdict::Unknown;
  for (Backend b : cfg_.order) {
    if (b == Backend::Builtin) {
      last = builtin_equiv(phi, psi, ex_phi, ex_psi);
    } else {
      if (!has_external()) continue;
      try {
        last = external().check_equiv(phi, psi, ex_phi, ex_psi);
      } catch (const UnsupportedSymbol&) {
        last = EquivVerdict::Unknown;
      }
    }
    if (last != EquivVerdict::Unknown) return last;
  }
  return last;
}

}  // namespace lcpat
