// Copyright 2026 The Hytrack Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hytrack/remote_detector.h"

#include <fcntl.h>
#include <netdb.h>
#include <poll.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <mutex>

#include "hytrack/errors.h"
#include "hytrack/wire_protocol.h"

namespace hytrack {

namespace {

int MillisUntil(LineTransport::Clock::time_point deadline) {
  const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
      deadline - LineTransport::Clock::now());
  return static_cast<int>(std::max<int64_t>(0, left.count()));
}

// Waits for `events` on fd; false on timeout.
bool WaitFor(int fd, short events, LineTransport::Clock::time_point deadline) {
  while (true) {
    pollfd p{fd, events, 0};
    const int rc = poll(&p, 1, MillisUntil(deadline));
    if (rc > 0) return true;
    if (rc == 0) return false;
    if (errno != EINTR) {
      throw TransportError(std::string("poll: ") + std::strerror(errno));
    }
  }
}

std::string ErrnoText(const char* what) {
  return std::string(what) + ": " + std::strerror(errno);
}

}  // namespace

void LineTransport::WriteLine(std::string_view line,
                              Clock::time_point deadline) {
  std::string framed(line);
  framed.push_back('\n');
  size_t sent = 0;
  while (sent < framed.size()) {
    if (!WaitFor(write_fd(), POLLOUT, deadline)) {
      Close();
      throw TransportError("write timed out");
    }
    const ssize_t n = WriteSome(framed.data() + sent, framed.size() - sent);
    if (n < 0) {
      if (errno == EINTR || errno == EAGAIN) continue;
      const std::string msg = ErrnoText("write");
      Close();
      throw TransportError(msg);
    }
    sent += static_cast<size_t>(n);
  }
}

std::string LineTransport::ReadLine(Clock::time_point deadline) {
  while (true) {
    const auto nl = buffer_.find('\n');
    if (nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return line;
    }
    if (!WaitFor(read_fd(), POLLIN, deadline)) {
      Close();
      throw TransportError("response timed out");
    }
    char chunk[4096];
    const ssize_t n = read(read_fd(), chunk, sizeof(chunk));
    if (n < 0) {
      if (errno == EINTR || errno == EAGAIN) continue;
      const std::string msg = ErrnoText("read");
      Close();
      throw TransportError(msg);
    }
    if (n == 0) {
      Close();
      throw TransportError("detector closed the connection");
    }
    buffer_.append(chunk, static_cast<size_t>(n));
  }
}

void SubprocessTransport::Open() {
  if (is_open()) return;
  static std::once_flag ignore_sigpipe;
  std::call_once(ignore_sigpipe, [] { signal(SIGPIPE, SIG_IGN); });

  int in_pipe[2];
  int out_pipe[2];
  if (pipe2(in_pipe, O_CLOEXEC) != 0) throw TransportError(ErrnoText("pipe"));
  if (pipe2(out_pipe, O_CLOEXEC) != 0) {
    close(in_pipe[0]);
    close(in_pipe[1]);
    throw TransportError(ErrnoText("pipe"));
  }
  const pid_t pid = fork();
  if (pid < 0) {
    for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1]}) close(fd);
    throw TransportError(ErrnoText("fork"));
  }
  if (pid == 0) {
    // Own process group so Close() can take down the whole command.
    setpgid(0, 0);
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    execl("/bin/sh", "sh", "-c", command_.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  close(in_pipe[0]);
  close(out_pipe[1]);
  pid_ = pid;
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];
  ClearBuffer();
}

void SubprocessTransport::Close() {
  if (to_child_ >= 0) close(to_child_);
  if (from_child_ >= 0) close(from_child_);
  to_child_ = from_child_ = -1;
  if (pid_ > 0) {
    kill(-pid_, SIGKILL);
    kill(pid_, SIGKILL);
    waitpid(pid_, nullptr, 0);
  }
  pid_ = -1;
  ClearBuffer();
}

ssize_t SubprocessTransport::WriteSome(const char* data, size_t size) {
  return write(to_child_, data, size);
}

void TcpTransport::Open() {
  if (is_open()) return;
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* result = nullptr;
  const std::string port = std::to_string(port_);
  const int rc = getaddrinfo(host_.c_str(), port.c_str(), &hints, &result);
  if (rc != 0) {
    throw TransportError("resolve " + host_ + ": " + gai_strerror(rc));
  }
  int fd = -1;
  for (addrinfo* ai = result; ai != nullptr; ai = ai->ai_next) {
    fd = socket(ai->ai_family, ai->ai_socktype | SOCK_CLOEXEC, ai->ai_protocol);
    if (fd < 0) continue;
    if (connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) break;
    close(fd);
    fd = -1;
  }
  freeaddrinfo(result);
  if (fd < 0) {
    throw TransportError("cannot connect to " + host_ + ":" + port);
  }
  fd_ = fd;
  ClearBuffer();
}

void TcpTransport::Close() {
  if (fd_ >= 0) close(fd_);
  fd_ = -1;
  ClearBuffer();
}

ssize_t TcpTransport::WriteSome(const char* data, size_t size) {
  return send(fd_, data, size, MSG_NOSIGNAL);
}

RemoteDetector::RemoteDetector(std::unique_ptr<LineTransport> transport,
                               Options options)
    : Detector(options.latency),
      transport_(std::move(transport)),
      options_(options) {
  transport_->Open();
}

std::vector<Detection> RemoteDetector::DetectRaw(const DetectionQuery& query) {
  if (query.image.empty()) {
    throw TransportError("remote detector needs an image path");
  }
  transport_->Open();
  DetectionRequest request;
  request.id = next_id_++;
  request.frame = query.frame_index;
  request.image = query.image.string();
  request.roi = query.roi;

  const auto deadline = LineTransport::Clock::now() + options_.timeout;
  transport_->WriteLine(EncodeRequest(request), deadline);
  DetectionResponse response;
  try {
    response = DecodeResponse(transport_->ReadLine(deadline));
  } catch (const ValidationError& e) {
    transport_->Close();
    throw TransportError(std::string("malformed response: ") + e.what());
  }
  if (response.id != request.id) {
    transport_->Close();
    throw TransportError("response id " + std::to_string(response.id) +
                         " does not echo request " +
                         std::to_string(request.id));
  }
  if (response.error) throw TransportError("detector error: " + *response.error);
  if (query.roi) {
    for (auto& d : response.detections) {
      d.box.x += query.roi->x;
      d.box.y += query.roi->y;
    }
  }
  return response.detections;
}

}  // namespace hytrack
