#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "pulseqa/common.hpp"

namespace pulseqa {

// One numeric formatting for every CSV cell, so identical runs give
// byte-identical files.
std::string format_number(double v);

// Buffered CSV writer; the file is written through a temporary and renamed on
// close so failed runs never leave a partial file behind.
class CsvWriter {
public:
  CsvWriter(std::string path, const std::vector<std::string>& header);
  ~CsvWriter();

  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  void row(const std::vector<double>& values);
  void raw_row(const std::string& line);
  void close();  // commit; throws on I/O failure

private:
  std::string path_;
  std::string tmp_path_;
  std::ofstream out_;
  bool committed_ = false;
};

void write_text_file(const std::string& path, const std::string& content);

}  // namespace pulseqa
