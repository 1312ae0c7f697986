#pragma once

#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <condition_variable>
#include <cstring>
#include <deque>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "gecforge/error.hpp"
#include "gecforge/sentence.hpp"
#include "gecforge/tagcodec.hpp"
#include "gecforge/tags.hpp"

extern char** environ;

// Line-oriented bridge to an external tagging / generation model running as a
// child process. One request line, one reply line:
//
//   TAG\t<sentence>                  -> <26 x a|b>
//   CORRUPT\t<26 x a|b>\t<sentence>  -> <corrupted sentence>
//
// Payload fields escape '\\', tab and newline as \\\\, \\t and \\n. A reply that
// starts with "ERR" reports a model-side failure.
namespace gecforge {

namespace protocol {

inline std::string escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string unescape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '\t' || c == '\n') throw AdapterProtocolError("raw control character in payload");
    if (c != '\\') {
      out += c;
      continue;
    }
    if (++i == s.size()) throw AdapterProtocolError("dangling escape in payload");
    switch (s[i]) {
      case '\\': out += '\\'; break;
      case 't': out += '\t'; break;
      case 'n': out += '\n'; break;
      default: throw AdapterProtocolError(std::string("unknown escape \\") + s[i]);
    }
  }
  return out;
}

inline std::string tag_request(const Sentence& s) { return "TAG\t" + escape(s.text); }

inline std::string corrupt_request(const TagSet& tags, const Sentence& s) {
  return "CORRUPT\t" + encode_mask(tags) + "\t" + escape(s.text);
}

inline void reject_error_reply(std::string_view reply) {
  if (reply.starts_with("ERR")) throw AdapterProtocolError("adapter reported: " + std::string(reply));
  if (reply.empty()) throw AdapterProtocolError("empty reply");
}

inline TagSet parse_tag_reply(std::string_view reply) {
  reject_error_reply(reply);
  try {
    return decode_mask(reply);
  } catch (const MalformedMask& e) {
    throw AdapterProtocolError(std::string("bad mask in reply: ") + e.what());
  }
}

/// The decoded text must itself be a single line without tabs.
inline std::string parse_corrupt_reply(std::string_view reply) {
  reject_error_reply(reply);
  std::string text = unescape(reply);
  if (text.find_first_of("\t\n\r") != std::string::npos)
    throw AdapterProtocolError("corrupted sentence spans several lines or fields");
  return text;
}

}  // namespace protocol

/// One child process connected through a socket pair on its stdin/stdout.
class AdapterProcess {
 public:
  explicit AdapterProcess(const std::vector<std::string>& command) {
    if (command.empty()) throw AdapterError("empty adapter command");
    int fds[2];
    if (::socketpair(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0, fds) != 0)
      throw AdapterError(std::string("socketpair: ") + std::strerror(errno));
    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_adddup2(&actions, fds[1], STDIN_FILENO);
    posix_spawn_file_actions_adddup2(&actions, fds[1], STDOUT_FILENO);
    std::vector<char*> argv;
    for (const auto& a : command) argv.push_back(const_cast<char*>(a.c_str()));
    argv.push_back(nullptr);
    int rc = ::posix_spawnp(&pid_, argv[0], &actions, nullptr, argv.data(), environ);
    posix_spawn_file_actions_destroy(&actions);
    ::close(fds[1]);
    if (rc != 0) {
      ::close(fds[0]);
      pid_ = -1;
      throw AdapterError("cannot start adapter '" + command[0] + "': " + std::strerror(rc));
    }
    fd_ = fds[0];
  }

  AdapterProcess(const AdapterProcess&) = delete;
  AdapterProcess& operator=(const AdapterProcess&) = delete;
  ~AdapterProcess() { terminate(); }

  bool alive() const { return fd_ >= 0; }

  void terminate() {
    if (fd_ >= 0) {
      ::close(fd_);
      fd_ = -1;
    }
    if (pid_ > 0) {
      ::kill(pid_, SIGKILL);
      int status = 0;
      while (::waitpid(pid_, &status, 0) < 0 && errno == EINTR) {
      }
      pid_ = -1;
    }
    buffer_.clear();
  }

  /// Sends one request line and waits for one reply line. A timeout or a dead
  /// child terminates the process; later calls then fail until it is replaced.
  std::string exchange(std::string_view request, std::chrono::milliseconds timeout) {
    if (!alive()) throw AdapterError("adapter process is not running");
    if (request.find('\n') != std::string_view::npos) throw AdapterProtocolError("request spans several lines");
    const auto deadline = std::chrono::steady_clock::now() + timeout;
    std::string frame(request);
    frame += '\n';
    for (std::size_t sent = 0; sent < frame.size();) {
      ssize_t n = ::send(fd_, frame.data() + sent, frame.size() - sent, MSG_NOSIGNAL);
      if (n < 0) {
        if (errno == EINTR) continue;
        terminate();
        throw AdapterError("adapter closed its input");
      }
      sent += static_cast<std::size_t>(n);
    }
    while (true) {
      if (auto nl = buffer_.find('\n'); nl != std::string::npos) {
        std::string line = buffer_.substr(0, nl);
        buffer_.erase(0, nl + 1);
        return line;
      }
      auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
      if (left.count() <= 0) {
        terminate();
        throw AdapterTimeout("adapter did not reply within " + std::to_string(timeout.count()) + " ms");
      }
      pollfd p{fd_, POLLIN, 0};
      int rc = ::poll(&p, 1, static_cast<int>(left.count()));
      if (rc < 0 && errno == EINTR) continue;
      if (rc == 0) continue;
      char chunk[4096];
      ssize_t n = ::recv(fd_, chunk, sizeof chunk, 0);
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) {
        terminate();
        throw AdapterError("adapter process exited");
      }
      buffer_.append(chunk, static_cast<std::size_t>(n));
    }
  }

 private:
  pid_t pid_ = -1;
  int fd_ = -1;
  std::string buffer_;
};

struct AdapterConfig {
  std::vector<std::string> command;
  std::chrono::milliseconds timeout{10000};
  std::size_t workers = 1;                  // concurrent child processes
  std::size_t max_restarts = 5;             // per restart window
  std::chrono::milliseconds restart_window{60000};
};

/// Thread-safe set of adapter processes. Children start lazily; a child that
/// died or timed out is replaced on the next request while the restart budget
/// lasts.
class AdapterPool {
 public:
  explicit AdapterPool(AdapterConfig config) : config_(std::move(config)) {
    if (config_.command.empty()) throw AdapterError("empty adapter command");
    if (config_.workers == 0) config_.workers = 1;
    slots_.resize(config_.workers);
    for (std::size_t i = 0; i < slots_.size(); ++i) free_.push_back(i);
  }

  TagSet request_tags(const Sentence& s) { return protocol::parse_tag_reply(exchange(protocol::tag_request(s))); }

  std::string request_corruption(const TagSet& tags, const Sentence& s) {
    return protocol::parse_corrupt_reply(exchange(protocol::corrupt_request(tags, s)));
  }

  std::string exchange(const std::string& request) {
    std::size_t slot = acquire();
    struct Release {
      AdapterPool* pool;
      std::size_t slot;
      ~Release() { pool->release(slot); }
    } guard{this, slot};
    auto& proc = slots_[slot];
    if (!proc || !proc->alive()) {
      note_start(proc != nullptr);
      proc.reset();
      proc = std::make_unique<AdapterProcess>(config_.command);
    }
    return proc->exchange(request, config_.timeout);
  }

  std::uint64_t restarts() const {
    std::lock_guard lock(mu_);
    return restarts_;
  }

  const AdapterConfig& config() const { return config_; }

 private:
  std::size_t acquire() {
    std::unique_lock lock(mu_);
    cv_.wait(lock, [&] { return !free_.empty(); });
    std::size_t s = free_.front();
    free_.pop_front();
    return s;
  }

  void release(std::size_t slot) {
    {
      std::lock_guard lock(mu_);
      free_.push_back(slot);
    }
    cv_.notify_one();
  }

  void note_start(bool is_restart) {
    if (!is_restart) return;
    std::lock_guard lock(mu_);
    auto now = std::chrono::steady_clock::now();
    while (!recent_.empty() && now - recent_.front() > config_.restart_window) recent_.pop_front();
    if (recent_.size() >= config_.max_restarts) throw AdapterError("adapter restart budget exhausted");
    recent_.push_back(now);
    ++restarts_;
  }

  AdapterConfig config_;
  std::vector<std::unique_ptr<AdapterProcess>> slots_;
  std::deque<std::size_t> free_;
  std::deque<std::chrono::steady_clock::time_point> recent_;
  std::uint64_t restarts_ = 0;
  mutable std::mutex mu_;
  std::condition_variable cv_;
};

}  // namespace gecforge
