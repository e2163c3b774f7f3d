package CH.ifa.draw.samples.pert;

import CH.ifa.draw.figures.*;
import CH.ifa.draw.standard.*;

public class PertFigure extends CompositeFigure {

    public PertFigure() {
        initialize();
    }

    private int asInt(int figureIndex) {
        NumberTextFigure t = (NumberTextFigure)figureAt(figureIndex);
        return t.getValue();
    }

    private String taskName() {
        TextFigure t = (TextFigure)figureAt(0);
        return t.getText();
    }

    private void setInt(int figureIndex, int value) {
        NumberTextFigure t = (NumberTextFigure)figureAt(figureIndex);
        t.setValue(value);
    }

    private void initialize() {
        // [ ... Initialization code here and for the figures below deleted ... ]
        TextFigure name = new TextFigure();
        add(name);
        NumberTextFigure duration = new NumberTextFigure();
        add(duration);
        NumberTextFigure end = new NumberTextFigure();
        add(end);
    }
}
