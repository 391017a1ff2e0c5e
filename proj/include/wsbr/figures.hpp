#pragma once

#include <string>
#include <vector>

namespace wsbr {

struct FigureOptions {
    int samples = 400;  // points per curve
    int terms = 40;
};

// SVG 1.1 document for figure 1..10.
std::string figure_svg(int id, const FigureOptions& opt = {});

// Writes figN.svg into out_dir for each id; returns the paths written.
std::vector<std::string> write_figures(const std::vector<int>& ids, const std::string& out_dir,
                                       const FigureOptions& opt = {});

}  // namespace wsbr
