#include "specbm/clustering.hpp"

#include <algorithm>
#include <ostream>
#include <string>

#include "specbm/errors.hpp"
#include "text_io.hpp"

namespace specbm {

std::vector<std::vector<VertexId>> Clustering::classes() const {
    std::vector<std::vector<VertexId>> out(static_cast<std::size_t>(k));
    for (std::size_t v = 0; v < labels.size(); ++v)
        out[static_cast<std::size_t>(labels[v])].push_back(static_cast<VertexId>(v));
    return out;
}

std::vector<std::int64_t> Clustering::class_sizes() const {
    std::vector<std::int64_t> sizes(static_cast<std::size_t>(k), 0);
    for (int label : labels) ++sizes[static_cast<std::size_t>(label)];
    return sizes;
}

void Clustering::save(std::ostream& out) const {
    std::size_t t = 0;
    for (std::size_t v = 0; v < labels.size(); ++v) {
        out << labels[v];
        if (t < trimmed.size() && static_cast<std::size_t>(trimmed[t]) == v) {
            out << " *";
            ++t;
        }
        out << '\n';
    }
}

Clustering Clustering::load(std::istream& in) {
    detail::LineReader reader(in);
    Clustering c;
    std::string line;
    while (reader.next(line)) {
        auto fields = detail::split_fields(line);
        if (fields.empty()) {
            // Allow a single trailing blank line, nothing else.
            if (reader.next(line)) reader.fail("blank line inside clustering");
            break;
        }
        bool is_trimmed = false;
        if (fields.size() == 2 && fields[1] == "*") {
            is_trimmed = true;
        } else if (fields.size() != 1) {
            reader.fail("expected 'label' or 'label *'");
        }
        const int label = detail::parse_int<int>(reader, fields[0], "label");
        if (label < 0) reader.fail("negative label");
        if (is_trimmed) c.trimmed.push_back(static_cast<VertexId>(c.labels.size()));
        c.labels.push_back(label);
        c.k = std::max(c.k, label + 1);
    }
    return c;
}

Clustering truth_clustering(const SbmParams& params) {
    Clustering c;
    c.k = params.k;
    c.labels.resize(static_cast<std::size_t>(params.num_vertices()));
    for (std::size_t v = 0; v < c.labels.size(); ++v)
        c.labels[v] = params.block_of(static_cast<std::int64_t>(v));
    return c;
}

}  // namespace specbm
