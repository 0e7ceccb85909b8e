//! SVG output, styling and the legend.

mod legend;
mod style;
mod svg;

pub use legend::{
    legend_for, legend_size, LegendEntry, LegendModel, Swatch, LEGEND_CHAR_WIDTH, LEGEND_LINE_HEIGHT,
    LEGEND_PADDING, LEGEND_SWATCH,
};
pub use style::{mix, Palette, StyleSheet};
pub use svg::{escape, format_number, panels_to_svg, scene_to_svg, SVG_MARGIN};
