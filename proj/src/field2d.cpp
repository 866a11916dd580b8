#include "befp/field2d.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <stdexcept>

namespace befp {

Grid2D::Grid2D(double half_width, std::size_t cells)
    : half_width_(half_width)
    , cells_(cells)
    , spacing_(2.0 * half_width / static_cast<double>(cells))
{
    if (!(half_width > 0.0) || !std::isfinite(half_width))
        throw std::invalid_argument("Grid2D: half width must be positive and finite");
    if (cells < 2 || cells % 2 != 0)
        throw std::invalid_argument("Grid2D: cell count must be even and >= 2");
}

Field2D::Field2D(Grid2D grid)
    : grid_(grid)
    , values_(grid.cells() * grid.cells(), 0.0)
{
}

Field2D::Field2D(Grid2D grid, std::vector<double> values)
    : grid_(grid)
    , values_(std::move(values))
{
    if (values_.size() != grid_.cells() * grid_.cells())
        throw std::invalid_argument("Field2D: value count does not match the grid");
}

Field2D Field2D::sample(Grid2D grid, const std::function<double(double, double)>& density)
{
    Field2D f(grid);
    const std::size_t n = grid.cells();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            f(i, j) = density(grid.center(i), grid.center(j));
    return f;
}

double Field2D::mass() const
{
    double s = 0.0;
    for (double v : values_)
        s += v;
    return s * grid_.cell_area();
}

double Field2D::min_value() const
{
    return *std::min_element(values_.begin(), values_.end());
}

double Field2D::max_value() const
{
    return *std::max_element(values_.begin(), values_.end());
}

double l1_distance(const Field2D& a, const Field2D& b)
{
    if (!(a.grid() == b.grid()))
        throw std::invalid_argument("l1_distance: fields live on different grids");
    double s = 0.0;
    for (std::size_t k = 0; k < a.values().size(); ++k)
        s += std::abs(a.values()[k] - b.values()[k]);
    return s * a.grid().cell_area();
}

void write_field_csv(std::ostream& os, const Field2D& f)
{
    os << std::setprecision(17) << "i,j,x,y,value\n";
    const auto& g = f.grid();
    for (std::size_t i = 0; i < g.cells(); ++i)
        for (std::size_t j = 0; j < g.cells(); ++j)
            os << i << ',' << j << ',' << g.center(i) << ',' << g.center(j) << ',' << f(i, j) << '\n';
}

void write_field_csv(const std::string& path, const Field2D& f)
{
    std::ofstream os(path);
    if (!os)
        throw std::runtime_error("cannot open " + path + " for writing");
    write_field_csv(os, f);
}

namespace {

static_assert(std::endian::native == std::endian::little, "binary field dumps assume a little-endian host");

template <class T>
void put(std::ostream& os, T v)
{
    char buf[sizeof(T)];
    std::memcpy(buf, &v, sizeof(T));
    os.write(buf, sizeof(T));
}

template <class T>
T get(std::istream& is)
{
    char buf[sizeof(T)];
    if (!is.read(buf, sizeof(T)))
        throw std::runtime_error("field binary: truncated input");
    T v;
    std::memcpy(&v, buf, sizeof(T));
    return v;
}

}  // namespace

void write_field_binary(std::ostream& os, const Field2D& f, double time)
{
    put<std::uint64_t>(os, field_magic);
    put<std::int64_t>(os, static_cast<std::int64_t>(f.cells()));
    put<double>(os, f.grid().half_width());
    put<double>(os, time);
    os.write(reinterpret_cast<const char*>(f.values().data()),
             static_cast<std::streamsize>(f.values().size() * sizeof(double)));
}

void write_field_binary(const std::string& path, const Field2D& f, double time)
{
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw std::runtime_error("cannot open " + path + " for writing");
    write_field_binary(os, f, time);
}

FieldSnapshot read_field_binary(std::istream& is)
{
    if (get<std::uint64_t>(is) != field_magic)
        throw std::runtime_error("field binary: bad magic");
    const auto n = get<std::int64_t>(is);
    const double L = get<double>(is);
    const double t = get<double>(is);
    if (n <= 0 || n > (1 << 16))
        throw std::runtime_error("field binary: implausible cell count");
    Grid2D grid(L, static_cast<std::size_t>(n));
    std::vector<double> v(static_cast<std::size_t>(n * n));
    if (!is.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(double))))
        throw std::runtime_error("field binary: truncated payload");
    return {Field2D(grid, std::move(v)), t};
}

FieldSnapshot read_field_binary(const std::string& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw std::runtime_error("cannot open " + path);
    return read_field_binary(is);
}

}  // namespace befp
