#include "inferlab/external_opponent.hpp"

#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <cstring>
#include <memory>
#include <mutex>

namespace inferlab {
namespace {

class ChildProcess {
 public:
  ChildProcess(std::vector<std::string> argv, std::chrono::milliseconds timeout)
      : argv_(std::move(argv)), timeout_(timeout) {
    if (argv_.empty()) throw OpponentError("external opponent needs a command");
  }

  ChildProcess(const ChildProcess&) = delete;
  ChildProcess& operator=(const ChildProcess&) = delete;

  ~ChildProcess() {
    if (pid_ <= 0) return;
    close_fd(to_child_);
    close_fd(from_child_);
    int status = 0;
    for (int i = 0; i < 50; ++i) {
      if (waitpid(pid_, &status, WNOHANG) != 0) return;
      usleep(2000);
    }
    kill(pid_, SIGKILL);
    waitpid(pid_, &status, 0);
  }

  std::string ask(const std::string& line) {
    std::lock_guard lock(mutex_);
    if (pid_ <= 0) start();
    const std::string out = line + "\n";
    std::size_t sent = 0;
    while (sent < out.size()) {
      const ssize_t n = write(to_child_, out.data() + sent, out.size() - sent);
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) throw OpponentError("cannot write to opponent: " + std::string(std::strerror(errno)));
      sent += static_cast<std::size_t>(n);
    }
    return read_line();
  }

 private:
  static void close_fd(int& fd) {
    if (fd >= 0) close(fd);
    fd = -1;
  }

  void start() {
    signal(SIGPIPE, SIG_IGN);
    int in[2], out[2];
    if (pipe(in) != 0) throw OpponentError("pipe failed");
    if (pipe(out) != 0) {
      close(in[0]);
      close(in[1]);
      throw OpponentError("pipe failed");
    }
    pid_ = fork();
    if (pid_ < 0) throw OpponentError("fork failed");
    if (pid_ == 0) {
      dup2(in[0], STDIN_FILENO);
      dup2(out[1], STDOUT_FILENO);
      close(in[0]);
      close(in[1]);
      close(out[0]);
      close(out[1]);
      std::vector<char*> args;
      for (std::string& a : argv_) args.push_back(a.data());
      args.push_back(nullptr);
      execvp(args[0], args.data());
      _exit(127);
    }
    close(in[0]);
    close(out[1]);
    to_child_ = in[1];
    from_child_ = out[0];
  }

  std::string read_line() {
    const auto deadline = std::chrono::steady_clock::now() + timeout_;
    while (true) {
      if (const auto nl = buffer_.find('\n'); nl != std::string::npos) {
        std::string line = buffer_.substr(0, nl);
        buffer_.erase(0, nl + 1);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return line;
      }
      const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
      if (left.count() <= 0) throw OpponentError("opponent timed out after " + std::to_string(timeout_.count()) + " ms");
      pollfd pfd{from_child_, POLLIN, 0};
      const int ready = poll(&pfd, 1, static_cast<int>(left.count()));
      if (ready < 0 && errno == EINTR) continue;
      if (ready < 0) throw OpponentError("poll failed");
      if (ready == 0) continue;
      char chunk[4096];
      const ssize_t n = read(from_child_, chunk, sizeof chunk);
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) throw OpponentError("opponent closed its output");
      buffer_.append(chunk, static_cast<std::size_t>(n));
    }
  }

  std::vector<std::string> argv_;
  std::chrono::milliseconds timeout_;
  pid_t pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
  std::mutex mutex_;
};

Hypothesis parse_reply(const std::string& reply) {
  const auto fail = [&] { return OpponentError("malformed opponent reply '" + reply + "'"); };
  if (reply.size() < 2 || reply[0] != 'H' || reply[1] != ' ') throw fail();
  const auto space = reply.find(' ', 2);
  if (space == std::string::npos) throw fail();
  Label label = 0;
  const char* first = reply.data() + 2;
  const char* last = reply.data() + space;
  const auto [ptr, ec] = std::from_chars(first, last, label);
  if (first == last || ec != std::errc() || ptr != last) throw fail();
  try {
    return make_hypothesis(label, UPSet::parse(reply.substr(space + 1)));
  } catch (const std::invalid_argument&) {
    throw fail();
  }
}

}  // namespace

Learner external_opponent(std::vector<std::string> argv, std::chrono::milliseconds timeout) {
  std::string name = "external:";
  for (std::size_t i = 0; i < argv.size(); ++i) name += (i ? " " : "") + argv[i];
  auto child = std::make_shared<ChildProcess>(std::move(argv), timeout);
  return Learner::gold(name, [child](const DataSequence& sigma) {
    return parse_reply(child->ask("Q " + sigma.to_string()));
  });
}

}  // namespace inferlab
