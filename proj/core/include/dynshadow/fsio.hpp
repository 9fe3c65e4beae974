// Copyright 2026 The dynshadow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DYNSHADOW_FSIO_HPP
#define DYNSHADOW_FSIO_HPP

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

namespace dynshadow {

/// Writes to "<path>.tmp" and renames onto `path` at commit(), so readers
/// never observe a partially written file. The temporary is removed if the
/// writer is destroyed without committing.
class AtomicFileWriter {
 public:
  explicit AtomicFileWriter(std::string path)
      : path_(std::move(path)), tmp_path_(path_ + ".tmp"), out_(tmp_path_, std::ios::trunc) {
    if (!out_) {
      throw std::runtime_error("cannot open for writing: " + tmp_path_);
    }
  }

  AtomicFileWriter(const AtomicFileWriter&) = delete;
  AtomicFileWriter& operator=(const AtomicFileWriter&) = delete;

  ~AtomicFileWriter() {
    if (!committed_) {
      out_.close();
      std::remove(tmp_path_.c_str());
    }
  }

  std::ostream& stream() { return out_; }

  void commit() {
    out_.flush();
    if (!out_) {
      throw std::runtime_error("write failed: " + tmp_path_);
    }
    out_.close();
    if (std::rename(tmp_path_.c_str(), path_.c_str()) != 0) {
      std::remove(tmp_path_.c_str());
      throw std::runtime_error("cannot rename " + tmp_path_ + " to " + path_);
    }
    committed_ = true;
  }

 private:
  std::string path_;
  std::string tmp_path_;
  std::ofstream out_;
  bool committed_ = false;
};

inline void write_text_file_atomic(const std::string& path, const std::string& contents) {
  AtomicFileWriter w(path);
  w.stream() << contents;
  w.commit();
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open for reading: " + path);
  }
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return text;
}

}  // namespace dynshadow

#endif  // DYNSHADOW_FSIO_HPP
