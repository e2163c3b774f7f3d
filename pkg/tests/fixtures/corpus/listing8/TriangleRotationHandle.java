package CH.ifa.draw.figures;

import java.awt.*;
import CH.ifa.draw.framework.*;
import CH.ifa.draw.standard.*;

class TriangleRotationHandle extends AbstractHandle {

    private Point fOrigin = null;
    private Point fCenter = null;

    public TriangleRotationHandle(TriangleFigure owner) {
        super(owner);
    }

    public void invokeStart(int x, int y, Drawing drawing) {
        fCenter = owner().center();
        fOrigin = getOrigin();
    }

    public void invokeStep (int dx, int dy, Drawing drawing) {
        double angle = Math.atan2(fOrigin.y + dy - fCenter.y,
                                fOrigin.x + dx - fCenter.x);
        ((TriangleFigure)(owner())).rotate(angle);
    }

    public void invokeEnd (int dx, int dy, Drawing drawing) {
        fOrigin = null;
        fCenter = null;
    }

    Point getOrigin() {
        Polygon p = ((TriangleFigure)(owner())).polygon();
        // [...]
    }

}
