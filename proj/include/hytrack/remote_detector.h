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

#ifndef HYTRACK_REMOTE_DETECTOR_H_
#define HYTRACK_REMOTE_DETECTOR_H_

#include <chrono>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <sys/types.h>

#include "hytrack/detector.h"

namespace hytrack {

// Bidirectional newline-framed byte stream. All failures surface as
// TransportError; Close() abandons whatever is in flight.
class LineTransport {
 public:
  using Clock = std::chrono::steady_clock;

  virtual ~LineTransport() = default;

  // No-op when already open.
  virtual void Open() = 0;
  virtual void Close() = 0;
  virtual bool is_open() const = 0;

  void WriteLine(std::string_view line, Clock::time_point deadline);
  // Returns the next line without its terminator. On timeout the connection
  // is closed before TransportError is thrown.
  std::string ReadLine(Clock::time_point deadline);

 protected:
  virtual int read_fd() const = 0;
  virtual int write_fd() const = 0;
  // write(2)-like; returns bytes written or -1 with errno set.
  virtual ssize_t WriteSome(const char* data, size_t size) = 0;

  void ClearBuffer() { buffer_.clear(); }

 private:
  std::string buffer_;
};

// Runs `/bin/sh -c <command>` and talks over its standard streams.
class SubprocessTransport : public LineTransport {
 public:
  explicit SubprocessTransport(std::string command)
      : command_(std::move(command)) {}
  ~SubprocessTransport() override { Close(); }

  void Open() override;
  void Close() override;
  bool is_open() const override { return pid_ > 0; }

 protected:
  int read_fd() const override { return from_child_; }
  int write_fd() const override { return to_child_; }
  ssize_t WriteSome(const char* data, size_t size) override;

 private:
  std::string command_;
  pid_t pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
};

class TcpTransport : public LineTransport {
 public:
  TcpTransport(std::string host, int port)
      : host_(std::move(host)), port_(port) {}
  ~TcpTransport() override { Close(); }

  void Open() override;
  void Close() override;
  bool is_open() const override { return fd_ >= 0; }

 protected:
  int read_fd() const override { return fd_; }
  int write_fd() const override { return fd_; }
  ssize_t WriteSome(const char* data, size_t size) override;

 private:
  std::string host_;
  int port_;
  int fd_ = -1;
};

// Detector backed by a detection service speaking the line protocol. One
// request is in flight at a time. A timed-out or malformed exchange resets
// the connection; the next call reconnects.
class RemoteDetector : public Detector {
 public:
  struct Options {
    std::chrono::milliseconds timeout{5000};
    std::optional<std::chrono::milliseconds> latency;
  };

  RemoteDetector(std::unique_ptr<LineTransport> transport, Options options);

 protected:
  std::vector<Detection> DetectRaw(const DetectionQuery& query) override;

 private:
  std::unique_ptr<LineTransport> transport_;
  Options options_;
  int64_t next_id_ = 1;
};

}  // namespace hytrack

#endif  // HYTRACK_REMOTE_DETECTOR_H_
