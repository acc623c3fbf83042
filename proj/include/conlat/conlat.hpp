#ifndef CONLAT_CONLAT_HPP_
#define CONLAT_CONLAT_HPP_

#include "conlat/birkhoff.hpp"
#include "conlat/bitset.hpp"
#include "conlat/chopped.hpp"
#include "conlat/congruence.hpp"
#include "conlat/constructions.hpp"
#include "conlat/embedding.hpp"
#include "conlat/enumerate.hpp"
#include "conlat/errors.hpp"
#include "conlat/extensions.hpp"
#include "conlat/glue.hpp"
#include "conlat/io.hpp"
#include "conlat/isomorphism.hpp"
#include "conlat/joinmap.hpp"
#include "conlat/ladder.hpp"
#include "conlat/lattice.hpp"
#include "conlat/named.hpp"
#include "conlat/partition.hpp"
#include "conlat/pipeline.hpp"
#include "conlat/poset.hpp"
#include "conlat/properties.hpp"
#include "conlat/report.hpp"
#include "conlat/structure.hpp"

#endif  // CONLAT_CONLAT_HPP_
