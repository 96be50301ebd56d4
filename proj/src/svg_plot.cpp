// SPDX-License-Identifier: Apache-2.0
//
// uwbrelay - capacity bounds for frequency-selective UWB relay channels
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "uwbrelay/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace uwbrelay
{

namespace
{

struct Line
{
    std::string name;
    std::vector<std::pair<double, double>> points;
};

std::vector<std::string> split_csv_row(const std::string &row)
{
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(row);
    while (std::getline(ss, cell, ','))
        cells.push_back(cell);
    return cells;
}

double to_double(const std::string &s, std::size_t line)
{
    try
    {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used == s.size())
            return v;
    }
    catch (const std::exception &)
    {
    }
    throw std::invalid_argument("Sweep CSV line " + std::to_string(line) + ": bad number '" + s + "'.");
}

std::vector<Line> parse_sweep(const std::string &csv)
{
    std::vector<Line> lines;
    std::istringstream in(csv);
    std::string row;
    std::size_t line_no = 0;
    bool header = true;
    while (std::getline(in, row))
    {
        ++line_no;
        if (!row.empty() && row.back() == '\r')
            row.pop_back();
        if (row.empty() || row.front() == '#')
            continue;
        if (header)
        {
            if (row.rfind("axis_value,bound,", 0) != 0)
                throw std::invalid_argument("Not a sweep CSV: unexpected header '" + row + "'.");
            header = false;
            continue;
        }
        const auto cells = split_csv_row(row);
        if (cells.size() < 3)
            throw std::invalid_argument("Sweep CSV line " + std::to_string(line_no) + ": too few columns.");
        const double x = to_double(cells[0], line_no);
        const double y = to_double(cells[2], line_no);
        auto it = std::find_if(lines.begin(), lines.end(), [&](const Line &l) { return l.name == cells[1]; });
        if (it == lines.end())
        {
            lines.push_back({cells[1], {}});
            it = lines.end() - 1;
        }
        it->points.emplace_back(x, y);
    }
    if (header)
        throw std::invalid_argument("Sweep CSV is empty.");
    return lines;
}

std::string fmt(const char *format, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), format, v);
    return buf;
}

std::string escape(const std::string &s)
{
    std::string out;
    for (char c : s)
    {
        switch (c)
        {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

// 1, 2 or 5 times a power of ten, giving roughly `target` intervals.
double nice_step(double span, int target)
{
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double f = raw / mag;
    return (f < 1.5 ? 1.0 : f < 3.5 ? 2.0 : f < 7.5 ? 5.0 : 10.0) * mag;
}

const char *palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                         "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

} // namespace

std::string svg_from_sweep_csv(const std::string &csv_text, const ChartLabels &labels)
{
    const auto lines = parse_sweep(csv_text);

    double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
    double y_lo = 0.0, y_hi = -std::numeric_limits<double>::infinity();
    for (const auto &l : lines)
        for (const auto &[x, y] : l.points)
        {
            x_lo = std::min(x_lo, x);
            x_hi = std::max(x_hi, x);
            y_lo = std::min(y_lo, y);
            y_hi = std::max(y_hi, y);
        }
    if (lines.empty())
        x_lo = 0.0, x_hi = 1.0, y_hi = 1.0;
    if (x_hi <= x_lo)
        x_hi = x_lo + 1.0;
    if (y_hi <= y_lo)
        y_hi = y_lo + 1.0;

    const double y_step = nice_step(y_hi - y_lo, 6);
    y_lo = std::floor(y_lo / y_step) * y_step;
    y_hi = std::ceil(y_hi / y_step) * y_step;
    const double x_step = nice_step(x_hi - x_lo, 8);

    const double width = 720, height = 480;
    const double left = 70, right = 200, top = 40, bottom = 60;
    const double pw = width - left - right, ph = height - top - bottom;
    auto sx = [&](double x) { return left + (x - x_lo) / (x_hi - x_lo) * pw; };
    auto sy = [&](double y) { return top + (1.0 - (y - y_lo) / (y_hi - y_lo)) * ph; };

    std::string s;
    s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"480\" viewBox=\"0 0 720 480\" "
         "font-family=\"sans-serif\" font-size=\"12\">\n";
    s += "<rect width=\"720\" height=\"480\" fill=\"white\"/>\n";
    if (!labels.title.empty())
        s += "<text x=\"" + fmt("%.1f", left + pw / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" +
             escape(labels.title) + "</text>\n";

    // Grid and tick labels.
    s += "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
    for (double y = y_lo; y <= y_hi + 1e-9 * y_step; y += y_step)
        s += "<line x1=\"" + fmt("%.2f", left) + "\" y1=\"" + fmt("%.2f", sy(y)) + "\" x2=\"" +
             fmt("%.2f", left + pw) + "\" y2=\"" + fmt("%.2f", sy(y)) + "\"/>\n";
    s += "</g>\n<g text-anchor=\"end\">\n";
    for (double y = y_lo; y <= y_hi + 1e-9 * y_step; y += y_step)
        s += "<text x=\"" + fmt("%.2f", left - 6) + "\" y=\"" + fmt("%.2f", sy(y) + 4) + "\">" +
             fmt("%g", std::abs(y) < 1e-12 * y_step ? 0.0 : y) + "</text>\n";
    s += "</g>\n<g text-anchor=\"middle\">\n";
    for (double x = std::ceil(x_lo / x_step) * x_step; x <= x_hi + 1e-9 * x_step; x += x_step)
        s += "<text x=\"" + fmt("%.2f", sx(x)) + "\" y=\"" + fmt("%.2f", top + ph + 18) + "\">" + fmt("%g", x) +
             "</text>\n";
    s += "</g>\n";

    // Axes.
    s += "<g stroke=\"black\" stroke-width=\"1.5\">\n";
    s += "<line x1=\"" + fmt("%.2f", left) + "\" y1=\"" + fmt("%.2f", top + ph) + "\" x2=\"" + fmt("%.2f", left + pw) +
         "\" y2=\"" + fmt("%.2f", top + ph) + "\"/>\n";
    s += "<line x1=\"" + fmt("%.2f", left) + "\" y1=\"" + fmt("%.2f", top) + "\" x2=\"" + fmt("%.2f", left) +
         "\" y2=\"" + fmt("%.2f", top + ph) + "\"/>\n";
    s += "</g>\n";
    s += "<text x=\"" + fmt("%.1f", left + pw / 2) + "\" y=\"" + fmt("%.1f", height - 16) +
         "\" text-anchor=\"middle\">" + escape(labels.x_label) + "</text>\n";
    s += "<text transform=\"translate(18 " + fmt("%.1f", top + ph / 2) +
         ") rotate(-90)\" text-anchor=\"middle\">" + escape(labels.y_label) + "</text>\n";

    for (std::size_t i = 0; i < lines.size(); ++i)
    {
        const char *color = palette[i % std::size(palette)];
        s += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"2\" points=\"";
        for (std::size_t j = 0; j < lines[i].points.size(); ++j)
        {
            if (j)
                s += ' ';
            s += fmt("%.2f", sx(lines[i].points[j].first)) + ',' + fmt("%.2f", sy(lines[i].points[j].second));
        }
        s += "\"/>\n";

        const double ly = top + 10 + 20.0 * static_cast<double>(i);
        s += "<line x1=\"" + fmt("%.1f", left + pw + 15) + "\" y1=\"" + fmt("%.1f", ly) + "\" x2=\"" +
             fmt("%.1f", left + pw + 45) + "\" y2=\"" + fmt("%.1f", ly) + "\" stroke=\"" + color +
             "\" stroke-width=\"2\"/>\n";
        s += "<text x=\"" + fmt("%.1f", left + pw + 52) + "\" y=\"" + fmt("%.1f", ly + 4) + "\">" +
             escape(lines[i].name) + "</text>\n";
    }
    s += "</svg>\n";
    return s;
}

} // namespace uwbrelay
