#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cohnet {

enum class FigureId { fig2, fig3, fig4, fig5, fig6, fig7 };

inline constexpr std::array<FigureId, 6> kAllFigures{FigureId::fig2, FigureId::fig3, FigureId::fig4,
                                                     FigureId::fig5, FigureId::fig6, FigureId::fig7};

std::string_view figure_name(FigureId id);
std::optional<FigureId> parse_figure_id(std::string_view name);

// Parameter grid for one figure.
//   fig2:       C11 over c x theta at n = n_values[0]
//   fig3, fig4: C11 over phi for every n in n_values at fixed theta
//   fig5..fig7: C12 over phi x theta at n = n_values[0]
struct SweepSpec {
  FigureId figure = FigureId::fig2;
  int primary_points = 101;  // c (fig2) or phi points
  int theta_points = 101;    // ignored by fig3/fig4
  std::vector<int> n_values{1};
  double theta = 0.0;  // fig3/fig4 only
};

SweepSpec default_sweep(FigureId id);
// Throws SpecError on resolutions below 2, theta outside [0, pi] or empty n_values.
void validate(const SweepSpec& spec);

// Last theta sample: pi when every overlap on the grid is below 1, else
// pi - 0.01 so the normalization stays away from zero.
double theta_grid_max(double max_overlap);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

// Rows are in grid order regardless of `jobs`.
CsvTable evaluate_sweep(const SweepSpec& spec, int jobs);

// Comma-delimited, LF line endings, 12 significant digits.
std::string format_csv(const CsvTable& table);
std::string format_number(double value);

// Throws IoError when the file cannot be written.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace cohnet
