// Copyright 2026 The advalloc Authors. All rights reserved.
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

#ifndef ADVALLOC_CSV_HPP_
#define ADVALLOC_CSV_HPP_

#include <fstream>
#include <string>
#include <vector>

namespace advalloc {

// %.10g, with "inf" for infinities.
std::string format_double(double v);

class CsvWriter {
 public:
  // Writes the header immediately.  Rows are flushed every flush_every rows
  // and on destruction.
  CsvWriter(const std::string& path, const std::vector<std::string>& header,
            int flush_every = 100);
  ~CsvWriter();

  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  void row(const std::vector<std::string>& fields);
  void flush();

 private:
  std::ofstream out_;
  std::size_t width_;
  int flush_every_;
  int pending_ = 0;
};

// Quotes a field if it contains a comma, quote or newline.
std::string csv_field(const std::string& s);

}  // namespace advalloc

#endif  // ADVALLOC_CSV_HPP_
