#pragma once

#include "bce/barcode.hpp"
#include "bce/filtered_complex.hpp"
#include "bce/reeb_model.hpp"

#include <string>
#include <vector>

namespace bce {

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

/// Text form (`# barcode v1`) or JSON form, detected from the first
/// non-blank character.
Barcode parse_barcode(const std::string& text, const std::string& source = "<string>");
Barcode read_barcode_file(const std::string& path);

/// `comments` become extra `# ...` lines after the header.
std::string barcode_to_text(const Barcode& b, const std::vector<std::string>& comments = {});
std::string barcode_to_json(const Barcode& b);

FilteredComplex parse_complex(const std::string& text, const std::string& source = "<string>");
FilteredComplexQ parse_complex_rational(const std::string& text, const std::string& source = "<string>");
std::string complex_to_text(const FilteredComplex& c);
std::string complex_to_text(const FilteredComplexQ& c);

ReebSpectrum parse_spectrum(const std::string& text, const std::string& source = "<string>");
ReebSpectrum read_spectrum_file(const std::string& path);
std::string spectrum_to_json(const ReebSpectrum& s);

}  // namespace bce
