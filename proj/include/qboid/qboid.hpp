#pragma once

#include "qboid/enumerate.hpp"
#include "qboid/error.hpp"
#include "qboid/export.hpp"
#include "qboid/geometry.hpp"
#include "qboid/io.hpp"
#include "qboid/model.hpp"
#include "qboid/moebius.hpp"
#include "qboid/pair.hpp"
#include "qboid/perm.hpp"
#include "qboid/treeops.hpp"
