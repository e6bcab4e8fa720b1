#include "vrb/types.hpp"

#include "vrb/errors.hpp"

namespace vrb {

std::string to_string(Metric m) {
    switch (m) {
        case Metric::L2: return "l2";
        case Metric::L1: return "l1";
        case Metric::IP: return "ip";
    }
    return "l2";
}

std::string to_string(IndexFamily f) {
    switch (f) {
        case IndexFamily::Flat: return "flat";
        case IndexFamily::HNSW: return "hnsw";
        case IndexFamily::IVFFlat: return "ivfflat";
        case IndexFamily::SQ: return "sq";
        case IndexFamily::IVFSQ: return "ivfsq";
        case IndexFamily::NSG: return "nsg";
        case IndexFamily::LSH: return "lsh";
    }
    return "flat";
}

std::string to_string(Arm a) { return a == Arm::TfIdf ? "tfidf" : "embedding"; }

Metric metric_from_string(const std::string& s) {
    if (s == "l2") return Metric::L2;
    if (s == "l1") return Metric::L1;
    if (s == "ip") return Metric::IP;
    throw InvalidArgumentError("unknown metric '" + s + "' (expected l2, l1, or ip)");
}

IndexFamily family_from_string(const std::string& s) {
    if (s == "flat") return IndexFamily::Flat;
    if (s == "hnsw") return IndexFamily::HNSW;
    if (s == "ivfflat") return IndexFamily::IVFFlat;
    if (s == "sq") return IndexFamily::SQ;
    if (s == "ivfsq") return IndexFamily::IVFSQ;
    if (s == "nsg") return IndexFamily::NSG;
    if (s == "lsh") return IndexFamily::LSH;
    throw InvalidArgumentError("unknown index family '" + s +
                               "' (expected flat, hnsw, ivfflat, sq, ivfsq, nsg, or lsh)");
}

Arm arm_from_string(const std::string& s) {
    if (s == "tfidf") return Arm::TfIdf;
    if (s == "embedding") return Arm::Embedding;
    throw InvalidArgumentError("unknown arm '" + s + "' (expected tfidf or embedding)");
}

}  // namespace vrb
